/** Timeline panel: SVG line charts for popularity series. A node selection
 * shows one curve; an edge selection overlays both endpoint curves and
 * prints the API-provided correlation; the states view shows the top-k
 * per-state curves. Every plotted value comes straight from a payload. */

import type { CorrelateDocument, TimelineDocument } from './types';

const SVG_NS = 'http://www.w3.org/2000/svg';
const CHART_WIDTH = 560;
const CHART_HEIGHT = 220;
const PAD = 34;

const SERIES_COLORS = [
  '#3366cc', '#e8710a', '#34a853', '#a142f4', '#f25c88',
  '#00acc1', '#ab9000', '#5f6368', '#d01884', '#1a73e8',
];

interface Curve {
  name: string;
  months: string[];
  scores: number[];
}

function svgElement<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

function curveFromSeries(series: TimelineDocument, name?: string): Curve {
  return {
    name: name ?? (series.geo ? `${series.event} @ ${series.geo}` : series.event),
    months: series.points.map((p) => p.month),
    scores: series.points.map((p) => p.score),
  };
}

/** Month axis = union of all curve months, sorted (YYYY-MM sorts as text). */
function renderChart(curves: Curve[]): SVGSVGElement {
  const svg = svgElement('svg');
  svg.dataset.testid = 'chart';
  svg.setAttribute('viewBox', `0 0 ${CHART_WIDTH} ${CHART_HEIGHT}`);
  svg.setAttribute('width', String(CHART_WIDTH));
  svg.setAttribute('height', String(CHART_HEIGHT));

  const months = [...new Set(curves.flatMap((c) => c.months))].sort();
  const maxScore = Math.max(1e-9, ...curves.flatMap((c) => c.scores));
  const xFor = (month: string): number => {
    const i = months.indexOf(month);
    const span = Math.max(months.length - 1, 1);
    return PAD + ((CHART_WIDTH - 2 * PAD) * i) / span;
  };
  const yFor = (score: number): number =>
    CHART_HEIGHT - PAD - ((CHART_HEIGHT - 2 * PAD) * score) / maxScore;

  const axis = svgElement('g');
  for (const month of months) {
    const tick = svgElement('text');
    tick.setAttribute('x', xFor(month).toFixed(1));
    tick.setAttribute('y', String(CHART_HEIGHT - 10));
    tick.setAttribute('text-anchor', 'middle');
    tick.setAttribute('font-size', '9');
    tick.textContent = month;
    axis.appendChild(tick);
  }
  svg.appendChild(axis);

  curves.forEach((curve, index) => {
    const color = SERIES_COLORS[index % SERIES_COLORS.length];
    const line = svgElement('polyline');
    line.dataset.series = curve.name;
    line.setAttribute('fill', 'none');
    line.setAttribute('stroke', color);
    line.setAttribute('stroke-width', '2');
    line.setAttribute(
      'points',
      curve.months.map((m, i) => `${xFor(m).toFixed(1)},${yFor(curve.scores[i]).toFixed(1)}`).join(' '),
    );
    svg.appendChild(line);

    const legend = svgElement('text');
    legend.dataset.legend = curve.name;
    legend.setAttribute('x', String(PAD));
    legend.setAttribute('y', String(14 + index * 13));
    legend.setAttribute('font-size', '11');
    legend.setAttribute('fill', color);
    legend.textContent = curve.name;
    svg.appendChild(legend);
  });
  return svg;
}

function panelScaffold(container: HTMLElement, heading: string): HTMLElement {
  container.replaceChildren();
  const panel = document.createElement('section');
  panel.dataset.testid = 'timeline-panel';
  const title = document.createElement('h2');
  title.textContent = heading;
  panel.appendChild(title);
  container.appendChild(panel);
  return panel;
}

/** Single-curve trend view for a focused node. */
export function renderNodeTimeline(container: HTMLElement, series: TimelineDocument): void {
  const panel = panelScaffold(container, `Trend: ${series.event}`);
  panel.appendChild(renderChart([curveFromSeries(series)]));
}

/** Edge view: both endpoint curves overlaid plus the correlation value. */
export function renderEdgeTimelines(
  container: HTMLElement,
  left: TimelineDocument,
  right: TimelineDocument,
  correlation: CorrelateDocument,
): void {
  const panel = panelScaffold(
    container,
    `Correlation: ${correlation.left_event} vs ${correlation.right_event}`,
  );
  panel.appendChild(renderChart([curveFromSeries(left), curveFromSeries(right)]));

  const value = document.createElement('p');
  value.dataset.testid = 'correlation-value';
  value.textContent =
    correlation.r === null ? 'r undefined (constant series)' : `r = ${correlation.r.toFixed(4)}`;
  panel.appendChild(value);
}

/** Top-k per-state comparison for one event type. */
export function renderTopStates(container: HTMLElement, series: TimelineDocument[]): void {
  const event = series[0]?.event ?? '';
  const panel = panelScaffold(container, `Top states: ${event}`);
  panel.appendChild(renderChart(series.map((s) => curveFromSeries(s, s.geo ?? '?'))));
}
