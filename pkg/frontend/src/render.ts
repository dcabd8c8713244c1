// HTML/SVG string rendering. Pure string-in/string-out so the tests can
// assert on markup without a browser; app.ts mounts the result.

import type { LabelStats, PairSummary } from "./types.js";
import { QUALITY_LABELS } from "./labels.js";
import { Arc, PairViewModel, RowModel, displaySlot } from "./model.js";

export const TOKEN_WIDTH = 90; // px per token slot, shared by rows and SVG
const ARC_BASE = 18;

export function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function slotX(row: RowModel, index: number): number {
  return displaySlot(row, index) * TOKEN_WIDTH + TOKEN_WIDTH / 2;
}

function arcPath(row: RowModel, arc: Arc, height: number): string {
  const x1 = slotX(row, arc.head);
  const x2 = slotX(row, arc.dep);
  const lift = Math.min(height - 4, ARC_BASE + Math.abs(arc.head - arc.dep) * 10);
  return `M ${x1} ${height} Q ${(x1 + x2) / 2} ${height - lift} ${x2} ${height}`;
}

function renderArcs(row: RowModel): string {
  const width = row.tokens.length * TOKEN_WIDTH;
  const height = 64;
  const paths = row.arcs
    .map(
      (arc) =>
        `<path class="arc" d="${arcPath(row, arc, height)}" ` +
        `data-head="${arc.head}" data-dep="${arc.dep}"></path>` +
        `<text class="deprel" x="${(slotX(row, arc.head) + slotX(row, arc.dep)) / 2}" ` +
        `y="${height - 26}">${escapeHtml(arc.deprel)}</text>`,
    )
    .join("");
  return `<svg class="arcs" width="${width}" height="${height}">${paths}</svg>`;
}

function tokenClasses(row: RowModel, index: number): string {
  const classes = ["token"];
  for (const span of row.spans) {
    if (index >= span.start && index <= span.end) {
      classes.push(span.kind === "target" ? "in-target" : "in-element");
      if (!span.core) classes.push("peripheral");
    }
  }
  return classes.join(" ");
}

function spanChips(row: RowModel, index: number): string {
  return row.spans
    .filter((span) => span.start === index)
    .map(
      (span) =>
        `<span class="chip ${span.kind}" data-span="${span.start}-${span.end}">` +
        `${escapeHtml(span.name)}</span>`,
    )
    .join("");
}

export function renderRow(row: RowModel, side: string): string {
  const order = row.tokens
    .map((tok) => tok.index)
    .sort((a, b) => displaySlot(row, a) - displaySlot(row, b));
  const cells = order
    .map((index) => {
      const tok = row.tokens[index];
      return (
        `<div class="${tokenClasses(row, index)}" data-index="${index}" ` +
        `style="width:${TOKEN_WIDTH}px">` +
        `${spanChips(row, index)}` +
        `<span class="form">${escapeHtml(tok.form)}</span>` +
        `<span class="upos">${escapeHtml(tok.upos)}</span></div>`
      );
    })
    .join("");
  const dir = row.rtl ? "rtl" : "ltr";
  return (
    `<div class="sentence ${side}" dir="${dir}" data-lang="${row.lang}">` +
    `${renderArcs(row)}<div class="tokens">${cells}</div></div>`
  );
}

function renderAlignment(vm: PairViewModel): string {
  const width =
    Math.max(vm.source.tokens.length, vm.target.tokens.length) * TOKEN_WIDTH;
  const height = 48;
  const lines = vm.alignment
    .map(
      ([i, j]) =>
        `<line class="link" x1="${slotX(vm.source, i)}" y1="0" ` +
        `x2="${slotX(vm.target, j)}" y2="${height}" ` +
        `data-link="${i}-${j}"></line>`,
    )
    .join("");
  return `<svg class="alignment" width="${width}" height="${height}">${lines}</svg>`;
}

export function renderPair(vm: PairViewModel): string {
  const score = vm.score === null ? "unscored" : vm.score.toFixed(3);
  const label = vm.label === null ? "unlabeled" : escapeHtml(vm.label);
  return (
    `<div class="pair" data-id="${escapeHtml(vm.id)}">` +
    `<div class="pair-head"><span class="pair-id">${escapeHtml(vm.id)}</span>` +
    `<span class="score">score: ${score}</span>` +
    `<span class="label">label: ${label}</span></div>` +
    renderRow(vm.source, "source") +
    renderAlignment(vm) +
    renderRow(vm.target, "target") +
    `</div>`
  );
}

export function renderError(message: string): string {
  return `<div class="error-panel" role="alert">${escapeHtml(message)}</div>`;
}

export function renderRetry(message: string): string {
  return (
    `<div class="error-panel retry" role="alert">${escapeHtml(message)} ` +
    `<button id="retry">Retry</button></div>`
  );
}

export function renderStats(stats: LabelStats | null): string {
  if (stats === null) {
    return `<div class="stats stale">stats unavailable</div>`;
  }
  const rows = QUALITY_LABELS.map(
    (label) =>
      `<li><span class="stat-label">${escapeHtml(label)}</span>` +
      `<span class="stat-count">${stats.distribution[label] ?? 0}</span></li>`,
  ).join("");
  return (
    `<div class="stats"><p>${stats.labeled} / ${stats.total} labeled</p>` +
    `<ul>${rows}</ul></div>`
  );
}

export function renderPairList(pairs: PairSummary[], current: string): string {
  const items = pairs
    .map((p) => {
      const cls = p.id === current ? "current" : p.label ? "done" : "";
      return (
        `<li class="${cls}" data-id="${escapeHtml(p.id)}">` +
        `${escapeHtml(p.id)}${p.label ? " ✓" : ""}</li>`
      );
    })
    .join("");
  return `<ul class="pair-list">${items}</ul>`;
}

export function renderShortcutHelp(): string {
  const keys = QUALITY_LABELS.map(
    (label, k) => `<li><kbd>${k + 1}</kbd> ${escapeHtml(label)}</li>`,
  ).join("");
  return `<ul class="shortcuts">${keys}</ul>`;
}
