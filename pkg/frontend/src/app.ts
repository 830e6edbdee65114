import { animateVector } from "./animate.js";
import { ApiClient } from "./api.js";
import { paramVector, specFromVector } from "./curves.js";
import { Debouncer } from "./debounce.js";
import { CurveEditor } from "./editor2d.js";
import { PRESETS } from "./presets.js";
import { DesignSession } from "./session.js";
import type { CurveSpec } from "./types.js";
import { MeshViewer } from "./viewer3d.js";

export interface AppElements {
  editorCanvas: HTMLCanvasElement;
  viewerCanvas: HTMLCanvasElement;
  validityBadge: HTMLElement;
  volumeReadout: HTMLElement;
  profileReadout: HTMLElement;
  banner: HTMLElement;
  presetSelect: HTMLSelectElement;
  theta1Slider: HTMLInputElement;
  wallDepthSlider: HTMLInputElement;
  asymmetricToggle: HTMLInputElement;
  optimizeButton: HTMLButtonElement;
  undoButton: HTMLButtonElement;
  redoButton: HTMLButtonElement;
  exportObjButton: HTMLButtonElement;
  exportSvgButton: HTMLButtonElement;
}

function download(filename: string, text: string, mime: string): void {
  const blob = new Blob([text], { type: mime });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = filename;
  a.click();
  URL.revokeObjectURL(url);
}

/** Wires the editor, 3D preview, readouts and service client together. */
export class DesignerApp {
  readonly api: ApiClient;
  readonly session: DesignSession;
  readonly editor: CurveEditor;
  readonly viewer: MeshViewer;
  readonly debouncer = new Debouncer(150);
  /** resolves after the readouts settle following the latest change */
  refreshed: Promise<void> = Promise.resolve();

  constructor(
    readonly el: AppElements,
    baseUrl = "",
  ) {
    this.api = new ApiClient(baseUrl);
    this.session = new DesignSession(PRESETS["circle"]);
    this.editor = new CurveEditor(el.editorCanvas, this.session.current());
    this.viewer = new MeshViewer(el.viewerCanvas);

    this.api.onConnectionChange = (ok) => {
      el.banner.style.display = ok ? "none" : "block";
    };

    this.editor.onEdit = (spec) => {
      // live while dragging: cheap validation only, debounced
      this.debouncer.trigger("drag", () => void this.refreshValidation(spec));
    };
    this.editor.onDragEnd = (spec) => {
      this.session.edit(spec);
      this.scheduleRefresh();
    };

    el.presetSelect.addEventListener("change", () => {
      const preset = PRESETS[el.presetSelect.value];
      if (!preset) return;
      this.session.edit(preset);
      this.editor.setSpec(this.session.current());
      this.scheduleRefresh();
    });

    const onView = () => {
      this.session.view.theta1 = el.asymmetricToggle.checked
        ? Number(el.theta1Slider.value) * (Math.PI / 180)
        : null;
      this.session.view.wallDepth = Number(el.wallDepthSlider.value);
      this.scheduleRefresh();
    };
    el.theta1Slider.addEventListener("input", onView);
    el.wallDepthSlider.addEventListener("input", onView);
    el.asymmetricToggle.addEventListener("change", onView);

    el.undoButton.addEventListener("click", () => {
      const doc = this.session.undo();
      if (doc) {
        this.editor.setSpec(doc);
        this.scheduleRefresh();
      }
    });
    el.redoButton.addEventListener("click", () => {
      const doc = this.session.redo();
      if (doc) {
        this.editor.setSpec(doc);
        this.scheduleRefresh();
      }
    });

    el.optimizeButton.addEventListener("click", () => void this.optimizeFromHere());

    el.exportObjButton.addEventListener("click", () => {
      void this.api
        .exportObj(this.session.current())
        .then((text) => download("pillow_box.obj", text, "text/plain"));
    });
    el.exportSvgButton.addEventListener("click", () => {
      void this.api
        .exportPattern(this.session.current(), this.session.view.patternScaleMm)
        .then((text) => download("pillow_pattern.svg", text, "image/svg+xml"));
    });

    this.scheduleRefresh();
  }

  /** Debounced full refresh (validity, volume, profile, mesh). */
  scheduleRefresh(): void {
    let done: () => void;
    this.refreshed = new Promise((resolve) => {
      done = resolve;
    });
    this.debouncer.trigger("refresh", () => {
      void this.refresh().finally(() => done());
    });
  }

  private async refreshValidation(spec: CurveSpec): Promise<void> {
    try {
      const result = await this.api.validate(spec, 1000);
      if (!result.stale) {
        this.editor.setValidation(result.body);
        this.setBadge(result.body.valid);
      }
    } catch {
      /* banner already shown via onConnectionChange */
    }
  }

  private setBadge(valid: boolean): void {
    this.el.validityBadge.textContent = valid ? "developable" : "not developable";
    this.el.validityBadge.className = valid ? "badge ok" : "badge bad";
  }

  async refresh(): Promise<void> {
    const spec = this.session.current();
    try {
      const validation = await this.api.validate(spec);
      if (!validation.stale) {
        this.session.lastValidation = validation.body;
        this.editor.setValidation(validation.body);
        this.setBadge(validation.body.valid);
      }

      if (this.session.lastValidation?.valid) {
        const [volume, profile, mesh] = await Promise.all([
          this.api.volume(spec),
          this.api.profile(spec),
          this.api.fold(
            spec,
            120,
            this.session.view.theta1,
            this.session.view.wallDepth,
          ),
        ]);
        if (!volume.stale) {
          this.session.lastVolume = volume.body;
          this.el.volumeReadout.textContent = volume.body.value.toFixed(6);
        }
        if (!profile.stale) {
          this.el.profileReadout.textContent =
            `width ${profile.body.width.toFixed(4)}, ` +
            `height ${profile.body.height.toFixed(4)}`;
        }
        if (!mesh.stale) {
          this.session.lastMesh = mesh.body;
          this.viewer.setMesh(mesh.body);
        }
      } else {
        this.el.volumeReadout.textContent = "—";
        this.el.profileReadout.textContent = "—";
      }
    } catch {
      /* connection banner handles it; curve stays rendered */
    }
  }

  /** Optimize starting from the current parameters, then animate to the
   * returned optimum and show the volume delta. */
  async optimizeFromHere(): Promise<void> {
    const spec = this.session.current();
    const from = paramVector(spec);
    if (!from) return; // read-only family
    const before = this.session.lastVolume?.value ?? null;
    this.el.optimizeButton.disabled = true;
    try {
      const body: Record<string, unknown> = {
        family: spec.family,
        sheet: spec.sheet,
        budget_seconds: 15,
        initial: from,
      };
      if (spec.family === "polyline") body.segments = from.length;
      const result = await this.api.optimize(body);
      const target = specFromVector(spec, result.params);
      await new Promise<void>((resolve) => {
        animateVector(
          from,
          result.params,
          400,
          (vec) => this.editor.setSpec(specFromVector(spec, vec)),
          resolve,
        );
      });
      this.session.edit(target);
      this.editor.setSpec(this.session.current());
      this.scheduleRefresh();
      await this.refreshed;
      const after = this.session.lastVolume?.value ?? result.volume;
      if (before !== null) {
        this.el.volumeReadout.textContent =
          `${after.toFixed(6)} (${after >= before ? "+" : ""}` +
          `${(after - before).toFixed(6)})`;
      }
    } finally {
      this.el.optimizeButton.disabled = false;
    }
  }
}

/** Entry point for the browser bundle. */
export function mount(): DesignerApp {
  const byId = <T extends HTMLElement>(id: string) =>
    document.getElementById(id) as T;
  return new DesignerApp(
    {
      editorCanvas: byId<HTMLCanvasElement>("editor"),
      viewerCanvas: byId<HTMLCanvasElement>("viewer"),
      validityBadge: byId("validity"),
      volumeReadout: byId("volume"),
      profileReadout: byId("profile"),
      banner: byId("banner"),
      presetSelect: byId<HTMLSelectElement>("preset"),
      theta1Slider: byId<HTMLInputElement>("theta1"),
      wallDepthSlider: byId<HTMLInputElement>("wall-depth"),
      asymmetricToggle: byId<HTMLInputElement>("asymmetric"),
      optimizeButton: byId<HTMLButtonElement>("optimize"),
      undoButton: byId<HTMLButtonElement>("undo"),
      redoButton: byId<HTMLButtonElement>("redo"),
      exportObjButton: byId<HTMLButtonElement>("export-obj"),
      exportSvgButton: byId<HTMLButtonElement>("export-svg"),
    },
    (window as unknown as { PILLOWFOLD_API?: string }).PILLOWFOLD_API ?? "",
  );
}

if (typeof document !== "undefined" && document.getElementById("editor")) {
  mount();
}
