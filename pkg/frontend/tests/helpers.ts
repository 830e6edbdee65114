import type { AppElements } from "../src/app.js";

/** Build the DOM the app expects (jsdom has no layout; rects come back as
 * zeros, which maps client coordinates straight onto canvas pixels). */
export function buildDom(): AppElements {
  document.body.innerHTML = "";
  const add = <T extends HTMLElement>(tag: string, id: string): T => {
    const el = document.createElement(tag) as T;
    el.id = id;
    document.body.appendChild(el);
    return el;
  };
  const editorCanvas = add<HTMLCanvasElement>("canvas", "editor");
  editorCanvas.width = 560;
  editorCanvas.height = 360;
  const viewerCanvas = add<HTMLCanvasElement>("canvas", "viewer");
  viewerCanvas.width = 560;
  viewerCanvas.height = 360;
  const presetSelect = add<HTMLSelectElement>("select", "preset");
  for (const name of [
    "circle", "rectangle", "rhombus", "arc",
    "quad-bezier", "cubic-bezier", "polyline",
  ]) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    presetSelect.appendChild(option);
  }
  const theta1Slider = add<HTMLInputElement>("input", "theta1");
  theta1Slider.type = "range";
  const wallDepthSlider = add<HTMLInputElement>("input", "wall-depth");
  wallDepthSlider.type = "range";
  const asymmetricToggle = add<HTMLInputElement>("input", "asymmetric");
  asymmetricToggle.type = "checkbox";
  return {
    editorCanvas,
    viewerCanvas,
    validityBadge: add("span", "validity"),
    volumeReadout: add("strong", "volume"),
    profileReadout: add("span", "profile"),
    banner: add("div", "banner"),
    presetSelect,
    theta1Slider,
    wallDepthSlider,
    asymmetricToggle,
    optimizeButton: add<HTMLButtonElement>("button", "optimize"),
    undoButton: add<HTMLButtonElement>("button", "undo"),
    redoButton: add<HTMLButtonElement>("button", "redo"),
    exportObjButton: add<HTMLButtonElement>("button", "export-obj"),
    exportSvgButton: add<HTMLButtonElement>("button", "export-svg"),
  };
}

export function pointer(
  target: HTMLElement,
  type: string,
  x: number,
  y: number,
): void {
  const event = new MouseEvent(type, {
    clientX: x,
    clientY: y,
    bubbles: true,
  });
  target.dispatchEvent(event);
}

export function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}
