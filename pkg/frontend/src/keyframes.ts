/**
 * Keyframe document wire format served by the engine.
 *
 * Primitive coordinates live in a y-up pixel space of width x height;
 * renderers flip the y axis when drawing to a canvas.
 */

export interface RectPrimitive {
  kind: "rect";
  x: number;
  y: number;
  w: number;
  h: number;
  fill: string;
  stroke: string;
  stroke_width: number;
}

export interface LinePrimitive {
  kind: "line";
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  stroke: string;
  stroke_width: number;
}

export interface TextPrimitive {
  kind: "text";
  x: number;
  y: number;
  text: string;
  fill: string;
}

export type Primitive = RectPrimitive | LinePrimitive | TextPrimitive;

export interface KeyframeFrame {
  primitives: Primitive[];
}

export interface KeyframeDocument {
  version: number;
  fps: number;
  width: number;
  height: number;
  frames: KeyframeFrame[];
}

function isFiniteNumber(value: unknown): value is number {
  return typeof value === "number" && Number.isFinite(value);
}

function checkPrimitive(raw: any, frameIndex: number, primIndex: number): Primitive {
  const where = `frame ${frameIndex}, primitive ${primIndex}`;
  if (raw === null || typeof raw !== "object") {
    throw new Error(`${where}: not an object`);
  }
  if (raw.kind === "rect") {
    for (const field of ["x", "y", "w", "h", "stroke_width"]) {
      if (!isFiniteNumber(raw[field])) throw new Error(`${where}: bad ${field}`);
    }
    if (typeof raw.fill !== "string" || typeof raw.stroke !== "string") {
      throw new Error(`${where}: rect colors must be strings`);
    }
    return raw as RectPrimitive;
  }
  if (raw.kind === "line") {
    for (const field of ["x1", "y1", "x2", "y2", "stroke_width"]) {
      if (!isFiniteNumber(raw[field])) throw new Error(`${where}: bad ${field}`);
    }
    if (typeof raw.stroke !== "string") throw new Error(`${where}: bad stroke`);
    return raw as LinePrimitive;
  }
  if (raw.kind === "text") {
    if (!isFiniteNumber(raw.x) || !isFiniteNumber(raw.y)) {
      throw new Error(`${where}: bad anchor`);
    }
    if (typeof raw.text !== "string" || typeof raw.fill !== "string") {
      throw new Error(`${where}: bad text/fill`);
    }
    return raw as TextPrimitive;
  }
  throw new Error(`${where}: unknown kind ${String(raw.kind)}`);
}

/** Parse and validate a keyframe document; throws on malformed input. */
export function parseKeyframeDocument(text: string): KeyframeDocument {
  const raw = JSON.parse(text);
  if (raw === null || typeof raw !== "object") {
    throw new Error("keyframe document must be a JSON object");
  }
  if (raw.version !== 1) {
    throw new Error(`unsupported keyframe document version ${String(raw.version)}`);
  }
  if (!isFiniteNumber(raw.fps) || raw.fps <= 0) throw new Error("bad fps");
  if (!isFiniteNumber(raw.width) || !isFiniteNumber(raw.height)) {
    throw new Error("bad document size");
  }
  if (!Array.isArray(raw.frames) || raw.frames.length < 2) {
    throw new Error("keyframe document needs at least 2 frames");
  }
  const frames: KeyframeFrame[] = raw.frames.map((frame: any, fi: number) => {
    if (frame === null || typeof frame !== "object" || !Array.isArray(frame.primitives)) {
      throw new Error(`frame ${fi}: missing primitives array`);
    }
    return {
      primitives: frame.primitives.map((p: any, pi: number) => checkPrimitive(p, fi, pi)),
    };
  });
  return { version: 1, fps: raw.fps, width: raw.width, height: raw.height, frames };
}

/** Structural equality of two frames, used to confirm static-chart handoff. */
export function framesEqual(a: KeyframeFrame, b: KeyframeFrame): boolean {
  return JSON.stringify(a) === JSON.stringify(b);
}
