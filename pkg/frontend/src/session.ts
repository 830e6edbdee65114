import type {
  CurveSpec,
  MeshPayload,
  ValidationReport,
  VolumePayload,
} from "./types.js";
import { cloneSpec, specsEqual } from "./types.js";

export interface ViewSettings {
  yaw: number;
  pitch: number;
  zoom: number;
  patternScaleMm: number;
  theta1: number | null; // null = symmetric box
  wallDepth: number;
}

const UNDO_CAP = 200;

/** Editing state of one design: the current curve document, an undo/redo
 * history of exact documents, and the latest service responses. */
export class DesignSession {
  private undoStack: CurveSpec[] = [];
  private redoStack: CurveSpec[] = [];
  private doc: CurveSpec;

  lastValidation: ValidationReport | null = null;
  lastVolume: VolumePayload | null = null;
  lastMesh: MeshPayload | null = null;
  view: ViewSettings = {
    yaw: 0.7,
    pitch: 0.45,
    zoom: 1.0,
    patternScaleMm: 100,
    theta1: null,
    wallDepth: 0,
  };

  constructor(initial: CurveSpec) {
    this.doc = cloneSpec(initial);
  }

  current(): CurveSpec {
    return cloneSpec(this.doc);
  }

  /** Record an edit; no-op when the document is unchanged. */
  edit(next: CurveSpec): void {
    if (specsEqual(next, this.doc)) return;
    this.undoStack.push(this.doc);
    if (this.undoStack.length > UNDO_CAP) this.undoStack.shift();
    this.redoStack = [];
    this.doc = cloneSpec(next);
  }

  canUndo(): boolean {
    return this.undoStack.length > 0;
  }

  canRedo(): boolean {
    return this.redoStack.length > 0;
  }

  undo(): CurveSpec | null {
    const prev = this.undoStack.pop();
    if (!prev) return null;
    this.redoStack.push(this.doc);
    this.doc = prev;
    return this.current();
  }

  redo(): CurveSpec | null {
    const next = this.redoStack.pop();
    if (!next) return null;
    this.undoStack.push(this.doc);
    this.doc = next;
    return this.current();
  }
}
