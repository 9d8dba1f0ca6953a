import { ApiClient, ApiError, ChooseOptionRequest } from "./api";
import {
  canRequest,
  clampCases,
  clampUtility,
  ExplorerState,
  initialState,
  OptionState,
} from "./state";
import { RequestScheduler } from "./scheduler";
import { comparisonRows, curvePath, heatmapRgba, indifferenceSegment, readouts } from "./render";
import type { EvaluationResponse, Utility } from "./types";

const GRID_N = 41;

const api = new ApiClient("");
const state: ExplorerState = initialState();

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

// ---------------------------------------------------------------------------
// request loop: debounced, sequence-gated, at most one render per newest seq

const scheduler = new RequestScheduler((seq) => void refresh(seq));

function inputsChanged(): void {
  if (state.selected >= 0 && canRequest(state)) {
    scheduler.request();
  }
  renderComparison(); // costs/names may have changed labels even before data
}

async function refresh(seq: number): Promise<void> {
  const selected = state.options[state.selected];
  if (!selected || !canRequest(state)) return;
  setError(null);
  try {
    const options: ChooseOptionRequest[] = state.options.map((o) => ({
      name: o.name,
      dataset_id: o.datasetId,
      cost: o.cost,
    }));
    const [evaluation, choice] = await Promise.all([
      api.evaluate(selected.datasetId, state.utility, GRID_N),
      api.choose(options, state.utility, state.nCases),
    ]);
    if (!scheduler.isCurrent(seq)) return; // superseded; never render stale data
    state.lastEvaluation = evaluation;
    state.lastChoice = choice;
    renderPanel();
    renderComparison();
  } catch (err) {
    if (!scheduler.isCurrent(seq)) return;
    setError(err instanceof ApiError ? err.message : `network failure: ${err}`);
  }
}

function setError(message: string | null): void {
  const panel = $("error-panel");
  panel.classList.toggle("hidden", message === null);
  $("error-message").textContent = message ?? "";
}

// ---------------------------------------------------------------------------
// rendering

function renderPanel(): void {
  const response = state.lastEvaluation;
  if (!response) return;
  const r = readouts(response);
  $("readout-payoff").textContent = r.payoff;
  $("readout-threshold").textContent = r.threshold;
  $("readout-tpr").textContent = r.tpr;
  $("readout-fpr").textContent = r.fpr;
  drawPlot(response);
}

function drawPlot(response: EvaluationResponse): void {
  const canvas = $("plot") as unknown as HTMLCanvasElement;
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const m = 44;
  const size = canvas.width - 2 * m;
  const px = (fpr: number) => m + fpr * size;
  const py = (tpr: number) => m + (1 - tpr) * size;

  ctx.clearRect(0, 0, canvas.width, canvas.height);

  // utility heatmap background
  const n = response.field.n;
  const cells = new ImageData(heatmapRgba(response.field), n, n);
  const off = document.createElement("canvas");
  off.width = n;
  off.height = n;
  off.getContext("2d")!.putImageData(cells, 0, 0);
  ctx.imageSmoothingEnabled = true;
  ctx.drawImage(off, m, m, size, size);

  // frame
  ctx.strokeStyle = "#444";
  ctx.lineWidth = 1;
  ctx.strokeRect(m, m, size, size);
  ctx.fillStyle = "#222";
  ctx.font = "13px system-ui, sans-serif";
  ctx.textAlign = "center";
  ctx.fillText("false positive rate", m + size / 2, canvas.height - 10);
  ctx.save();
  ctx.translate(14, m + size / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText("true positive rate", 0, 0);
  ctx.restore();
  ctx.textAlign = "left";
  ctx.fillText("0", m - 10, py(0) + 14);
  ctx.fillText("1", px(1) + 4, py(0) + 14);
  ctx.fillText("1", m - 14, py(1) + 4);

  // dashed indifference line through the status-quo point
  const segment = indifferenceSegment(response.indifference);
  if (segment) {
    ctx.save();
    ctx.beginPath();
    ctx.rect(m, m, size, size);
    ctx.clip();
    ctx.setLineDash([7, 5]);
    ctx.strokeStyle = "#1c6b30";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(px(segment[0][0]), py(segment[0][1]));
    ctx.lineTo(px(segment[1][0]), py(segment[1][1]));
    ctx.stroke();
    ctx.setLineDash([7, 5]);
    ctx.lineDashOffset = 7;
    ctx.strokeStyle = "#111";
    ctx.stroke();
    ctx.restore();
  }

  // ROC curve
  const path = curvePath(response.curve);
  ctx.strokeStyle = "#1d4ed8";
  ctx.lineWidth = 2.5;
  ctx.beginPath();
  path.forEach(([fpr, tpr], i) => {
    if (i === 0) ctx.moveTo(px(fpr), py(tpr));
    else ctx.lineTo(px(fpr), py(tpr));
  });
  ctx.stroke();

  // optimal operating point
  ctx.fillStyle = "#16a34a";
  ctx.strokeStyle = "#ffffff";
  ctx.beginPath();
  ctx.arc(px(response.optimal.fpr), py(response.optimal.tpr), 7, 0, 2 * Math.PI);
  ctx.fill();
  ctx.lineWidth = 2;
  ctx.stroke();
}

function renderComparison(): void {
  const tbody = $("comparison-body");
  tbody.innerHTML = "";
  if (state.lastChoice) {
    for (const row of comparisonRows(state.lastChoice)) {
      const tr = document.createElement("tr");
      if (row.winner) tr.classList.add("winner");
      const label = row.name === "status-quo" ? "status-quo (do nothing)" : row.name;
      tr.innerHTML = `<td>${label}</td><td class="num">${row.net}</td><td>${row.winner ? "★" : ""}</td>`;
      tbody.appendChild(tr);
    }
  }
}

function renderOptions(): void {
  const list = $("options-list");
  list.innerHTML = "";
  state.options.forEach((option, idx) => {
    const row = document.createElement("div");
    row.className = "option-row";
    const radio = document.createElement("input");
    radio.type = "radio";
    radio.name = "plotted-option";
    radio.checked = idx === state.selected;
    radio.addEventListener("change", () => {
      state.selected = idx;
      inputsChanged();
    });
    const label = document.createElement("span");
    label.textContent = option.name;
    const cost = document.createElement("input");
    cost.type = "number";
    cost.min = "0";
    cost.step = "10";
    cost.value = String(option.cost);
    cost.title = "investment cost";
    cost.addEventListener("input", () => {
      option.cost = Math.max(0, Number(cost.value) || 0);
      inputsChanged();
    });
    row.append(radio, label, cost);
    list.appendChild(row);
  });
}

// ---------------------------------------------------------------------------
// controls

interface SliderSpec {
  id: string;
  key: keyof Utility;
}

const SLIDERS: SliderSpec[] = [
  { id: "p", key: "p" },
  { id: "v-tp", key: "v_tp" },
  { id: "v-fp", key: "v_fp" },
  { id: "v-tn", key: "v_tn" },
  { id: "v-fn", key: "v_fn" },
];

function wireControls(): void {
  for (const spec of SLIDERS) {
    const slider = $(`slider-${spec.id}`) as unknown as HTMLInputElement;
    const box = $(`value-${spec.id}`) as unknown as HTMLInputElement;
    slider.value = String(state.utility[spec.key]);
    box.value = String(state.utility[spec.key]);
    const apply = (raw: string) => {
      const next = { ...state.utility, [spec.key]: Number(raw) };
      state.utility = clampUtility(next); // clamp first, then request
      slider.value = String(state.utility[spec.key]);
      box.value = String(state.utility[spec.key]);
      inputsChanged();
    };
    slider.addEventListener("input", () => apply(slider.value));
    box.addEventListener("change", () => apply(box.value));
  }

  const cases = $("n-cases") as unknown as HTMLInputElement;
  cases.value = String(state.nCases);
  cases.addEventListener("change", () => {
    state.nCases = clampCases(Number(cases.value));
    cases.value = String(state.nCases);
    inputsChanged();
  });

  const upload = $("dataset-file") as unknown as HTMLInputElement;
  upload.addEventListener("change", async () => {
    const file = upload.files?.[0];
    if (!file) return;
    try {
      const handle = await api.uploadDataset(await file.text());
      addOption(file.name.replace(/\.csv$/i, ""), handle.id);
    } catch (err) {
      setError(err instanceof ApiError ? err.message : `upload failed: ${err}`);
    } finally {
      upload.value = "";
    }
  });

  $("load-demo").addEventListener("click", () => void loadDemoDatasets());
  $("error-retry").addEventListener("click", () => {
    setError(null);
    inputsChanged();
  });
}

function addOption(name: string, datasetId: string): void {
  const taken = new Set(state.options.map((o) => o.name));
  let unique = name;
  for (let k = 2; taken.has(unique); k++) unique = `${name}-${k}`;
  const option: OptionState = { name: unique, datasetId, cost: 0 };
  state.options.push(option);
  if (state.selected < 0) state.selected = 0;
  renderOptions();
  inputsChanged();
}

// Two deterministic synthetic score sets (seeded LCG): a weak single-feature
// rule and a stronger model. Generation is presentation-side only; every
// number shown still comes from the service.
async function loadDemoDatasets(): Promise<void> {
  const make = (separation: number, seed: number): string => {
    let s = seed >>> 0;
    const rand = () => ((s = (1664525 * s + 1013904223) >>> 0), s / 2 ** 32);
    const gauss = () => {
      const u = Math.max(rand(), 1e-12);
      return Math.sqrt(-2 * Math.log(u)) * Math.cos(2 * Math.PI * rand());
    };
    const lines = ["score,label"];
    for (let i = 0; i < 2000; i++) {
      const good = rand() < 0.02;
      const score = (good ? separation : 0) + gauss();
      lines.push(`${score.toFixed(6)},${good ? 1 : 0}`);
    }
    return lines.join("\n") + "\n";
  };
  try {
    const simple = await api.uploadDataset(make(2.0, 7));
    addOption("simple-rule", simple.id);
    const richer = await api.uploadDataset(make(2.6, 7));
    addOption("richer-model", richer.id);
    const costs = [50, 600];
    state.options.slice(-2).forEach((o, i) => (o.cost = costs[i]));
    renderOptions();
    inputsChanged();
  } catch (err) {
    setError(err instanceof ApiError ? err.message : `demo load failed: ${err}`);
  }
}

wireControls();
renderOptions();
renderComparison();
