// App wiring: preset picker, live level slider, pinned-level relation panel,
// and the catalog gallery. All numbers shown come from service payloads.

import {
  fetchAnalyze,
  fetchPresets,
  fetchRelation,
  fetchSlice,
  fetchWitness,
  ServiceError,
} from "./api.js";
import { GALLERY, areaLabels, crossingCount, verdictBadge } from "./gallery.js";
import { buildRelationPanel, describeVerdict } from "./relation.js";
import { buildScene, drawScene } from "./render.js";
import {
  DEFAULT_STATE,
  ViewState,
  clampLevel,
  clearPins,
  decodeState,
  encodeState,
  pinLevel,
} from "./state.js";
import { LatestWins, Throttle } from "./throttle.js";
import type { PresetPayload, SliceResultPayload } from "./types.js";

const VIEW_PX = 560;

let state: ViewState = { ...DEFAULT_STATE };
let presets: PresetPayload[] = [];
let lastSlice: SliceResultPayload | null = null;

const throttle = new Throttle(100); // at most 10 requests per second
const gate = new LatestWins<SliceResultPayload>();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element ${id}`);
  return node as T;
}

function toast(message: string): void {
  const box = el<HTMLDivElement>("toast");
  box.textContent = message;
  box.classList.add("visible");
  setTimeout(() => box.classList.remove("visible"), 4000);
}

function pushState(): void {
  window.location.hash = encodeState(state);
}

function currentPreset(): PresetPayload | undefined {
  return presets.find((p) => p.name === state.preset);
}

function requestSlice(): void {
  throttle.call(() => {
    const level = state.level;
    gate
      .run(async () => (await fetchSlice(state.preset, level)).result)
      .then((result) => {
        if (!result) return; // a newer response already painted
        lastSlice = result;
        const canvas = el<HTMLCanvasElement>("scene");
        const ctx = canvas.getContext("2d");
        if (ctx) drawScene(ctx, buildScene(result, VIEW_PX), VIEW_PX);
        el<HTMLSpanElement>("classification").textContent =
          result.classification.label;
        el<HTMLSpanElement>("level-readout").textContent = result.level.toFixed(4);
      })
      .catch((err) => {
        if (err instanceof ServiceError && err.status === 422) {
          el<HTMLSpanElement>("classification").textContent =
            "non-generic level";
        } else {
          toast(String(err.message ?? err));
        }
      });
  });
}

async function refreshRelationPanel(): Promise<void> {
  const panelBadge = el<HTMLSpanElement>("relation-badge");
  const panelHead = el<HTMLSpanElement>("relation-headline");
  const panelDetail = el<HTMLParagraphElement>("relation-detail");
  if (state.pinned.length < 2) {
    const panel = buildRelationPanel(null, null);
    panelBadge.className = `badge ${panel.badge}`;
    panelBadge.textContent = panel.badge;
    panelHead.textContent = panel.headline;
    panelDetail.textContent = panel.detail;
    return;
  }
  const [a, b] = state.pinned;
  try {
    const witness = (await fetchWitness(state.preset, a, b)).result;
    const bot = witness.bottom.classification;
    const top = witness.top.classification;
    let verdict = null;
    if (bot.family !== "unclassified" && top.family !== "unclassified") {
      verdict = (await fetchRelation(bot.label, top.label)).result;
    }
    const panel = buildRelationPanel(witness, verdict);
    panelBadge.className = `badge ${panel.badge}`;
    panelBadge.textContent = panel.badge;
    panelHead.textContent = panel.headline;
    panelDetail.textContent = verdict
      ? `${panel.detail} — engine: ${describeVerdict(verdict)}`
      : panel.detail;
  } catch (err) {
    toast(String((err as Error).message ?? err));
  }
}

function bindLevelSlider(): void {
  const slider = el<HTMLInputElement>("level");
  const preset = currentPreset();
  if (preset) {
    slider.min = preset.sweep.from.toString();
    slider.max = preset.sweep.to.toString();
    slider.step = ((preset.sweep.to - preset.sweep.from) / 400).toString();
  }
  slider.value = state.level.toString();
  slider.oninput = () => {
    state = { ...state, level: clampLevel(Number(slider.value)) };
    pushState();
    requestSlice();
  };
}

function bindPins(): void {
  el<HTMLButtonElement>("pin").onclick = () => {
    state = pinLevel(state, state.level);
    pushState();
    renderPins();
    void refreshRelationPanel();
  };
  el<HTMLButtonElement>("clear-pins").onclick = () => {
    state = clearPins(state);
    pushState();
    renderPins();
    void refreshRelationPanel();
  };
}

function renderPins(): void {
  el<HTMLSpanElement>("pins").textContent = state.pinned.length
    ? state.pinned.map((x) => x.toFixed(4)).join("  <  ")
    : "none";
}

async function buildGallery(): Promise<void> {
  const host = el<HTMLDivElement>("gallery");
  host.textContent = "";
  for (const entry of GALLERY) {
    const card = document.createElement("figure");
    card.className = "card";
    const canvas = document.createElement("canvas");
    canvas.width = canvas.height = 200;
    const caption = document.createElement("figcaption");
    caption.textContent = `${entry.title} — ${entry.note}`;
    const badge = document.createElement("span");
    badge.className = "badge";
    card.append(canvas, badge, caption);
    host.append(card);
    try {
      const payload = (await fetchAnalyze(entry.expression)).result;
      const ctx = canvas.getContext("2d");
      if (ctx) drawScene(ctx, buildScene(payload.render, 200), 200);
      badge.textContent = verdictBadge(payload);
      badge.classList.add(
        payload.verdict.result === "impossible" ? "obstructed" : "open",
      );
      canvas.title = `${crossingCount(payload)} crossings; areas ${areaLabels(
        payload,
      ).join(", ")}`;
    } catch (err) {
      if (err instanceof ServiceError && err.status === 422) {
        badge.textContent = "non-generic";
      } else {
        badge.textContent = "unavailable";
      }
    }
  }
}

async function boot(): Promise<void> {
  state = decodeState(window.location.hash);
  try {
    presets = await fetchPresets();
  } catch (err) {
    toast("service unreachable; start it with: slicelab serve --static dist");
    return;
  }
  const picker = el<HTMLSelectElement>("preset");
  picker.textContent = "";
  for (const p of presets) {
    const option = document.createElement("option");
    option.value = p.name;
    option.textContent = `${p.name} — ${p.expect.family}`;
    picker.append(option);
  }
  if (!presets.some((p) => p.name === state.preset)) {
    state = { ...state, preset: presets[0]?.name ?? DEFAULT_STATE.preset };
  }
  picker.value = state.preset;
  picker.onchange = () => {
    const preset = presets.find((p) => p.name === picker.value);
    state = {
      ...state,
      preset: picker.value,
      level: preset ? preset.level : state.level,
      pinned: [],
    };
    pushState();
    bindLevelSlider();
    renderPins();
    requestSlice();
    void refreshRelationPanel();
  };

  bindLevelSlider();
  bindPins();
  renderPins();
  requestSlice();
  void refreshRelationPanel();
  void buildGallery();
}

if (typeof window !== "undefined" && typeof document !== "undefined") {
  window.addEventListener("DOMContentLoaded", () => void boot());
}
