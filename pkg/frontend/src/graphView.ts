/** TCAG rendering: one <svg> with a line per edge and a circle+label per
 * node, positioned by the deterministic force layout. Clicking a node
 * focuses it; clicking an edge selects it. All sizes and colors derive from
 * the payload (display_size, display_thickness, kind, focus_colors). */

import { forceLayout } from './layout';
import { EDGE_COLORS, FOCUS_COLORS, NODE_DEFAULT_COLOR } from './palette';
import type { EdgeSelection } from './viewState';
import { edgeKey } from './viewState';
import type { TcagDocument, TcagEdge } from './types';

const SVG_NS = 'http://www.w3.org/2000/svg';
const WIDTH = 900;
const HEIGHT = 600;

export interface GraphCallbacks {
  onFocusNode(eventType: string): void;
  onSelectEdge(edge: EdgeSelection): void;
}

export class SchemaMismatchError extends Error {}

/** Structural check before any DOM is touched, so a bad payload never
 * partially renders. */
export function assertTcagShape(doc: unknown): asserts doc is TcagDocument {
  const d = doc as Partial<TcagDocument> | null;
  if (
    d === null ||
    typeof d !== 'object' ||
    d.schema !== 'tcag/1' ||
    !Array.isArray(d.nodes) ||
    !Array.isArray(d.edges)
  ) {
    throw new SchemaMismatchError('response is not a tcag/1 document');
  }
  for (const node of d.nodes) {
    if (typeof node.event_type !== 'string' || typeof node.mention_count !== 'number') {
      throw new SchemaMismatchError('malformed node entry');
    }
  }
  for (const edge of d.edges) {
    if (typeof edge.kind !== 'string' || typeof edge.left !== 'string') {
      throw new SchemaMismatchError('malformed edge entry');
    }
  }
}

function svgElement<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

/** Node radius from the API's display_size; floor keeps clicks possible. */
function nodeRadius(displaySize: number): number {
  return 6 + displaySize * 7;
}

function edgeWidth(edge: TcagEdge): number {
  return Math.max(1, edge.display_thickness * 2);
}

export function renderGraph(
  container: HTMLElement,
  doc: TcagDocument,
  callbacks: GraphCallbacks,
): void {
  assertTcagShape(doc);
  container.replaceChildren();

  if (doc.nodes.length === 0) {
    const empty = document.createElement('p');
    empty.dataset.testid = 'empty-state';
    empty.textContent = 'No events match the current filter.';
    container.appendChild(empty);
    return;
  }

  const svg = svgElement('svg');
  svg.dataset.testid = 'graph';
  svg.setAttribute('viewBox', `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute('width', String(WIDTH));
  svg.setAttribute('height', String(HEIGHT));

  const nodeIds = doc.nodes.map((n) => n.event_type);
  const positions = forceLayout(nodeIds, doc.edges, { width: WIDTH, height: HEIGHT });

  const edgeLayer = svgElement('g');
  for (const edge of doc.edges) {
    const from = positions.get(edge.left);
    const to = positions.get(edge.right);
    if (from === undefined || to === undefined) continue;
    const line = svgElement('line');
    line.dataset.edge = edgeKey(edge.kind, edge.left, edge.right);
    line.dataset.kind = edge.kind;
    line.setAttribute('x1', from.x.toFixed(1));
    line.setAttribute('y1', from.y.toFixed(1));
    line.setAttribute('x2', to.x.toFixed(1));
    line.setAttribute('y2', to.y.toFixed(1));
    line.setAttribute('stroke', EDGE_COLORS[edge.kind]);
    line.setAttribute('stroke-width', edgeWidth(edge).toFixed(2));
    if (edge.style === 'dashed') {
      line.setAttribute('stroke-dasharray', '6 4');
    }
    if (edge.kind !== 'IsA') {
      line.addEventListener('click', () =>
        callbacks.onSelectEdge({ kind: edge.kind, left: edge.left, right: edge.right }),
      );
      line.setAttribute('cursor', 'pointer');
    }
    const title = svgElement('title');
    title.textContent = `${edge.left} ${edge.kind} ${edge.right} (${edge.count})`;
    line.appendChild(title);
    edgeLayer.appendChild(line);
  }
  svg.appendChild(edgeLayer);

  const nodeLayer = svgElement('g');
  for (const node of doc.nodes) {
    const pos = positions.get(node.event_type)!;
    const role = doc.focus_colors?.[node.event_type];
    const circle = svgElement('circle');
    circle.dataset.node = node.event_type;
    if (role !== undefined) {
      circle.dataset.role = role;
    }
    circle.setAttribute('cx', pos.x.toFixed(1));
    circle.setAttribute('cy', pos.y.toFixed(1));
    circle.setAttribute('r', nodeRadius(node.display_size).toFixed(2));
    circle.setAttribute('fill', role !== undefined ? FOCUS_COLORS[role] : NODE_DEFAULT_COLOR);
    circle.setAttribute('cursor', 'pointer');
    circle.addEventListener('click', () => callbacks.onFocusNode(node.event_type));
    const title = svgElement('title');
    title.textContent = `${node.event_type}: ${node.mention_count} mention(s)`;
    circle.appendChild(title);
    nodeLayer.appendChild(circle);

    const label = svgElement('text');
    label.dataset.nodeLabel = node.event_type;
    label.setAttribute('x', pos.x.toFixed(1));
    label.setAttribute('y', (pos.y - nodeRadius(node.display_size) - 4).toFixed(1));
    label.setAttribute('text-anchor', 'middle');
    label.setAttribute('font-size', '12');
    label.textContent = node.event_type;
    nodeLayer.appendChild(label);
  }
  svg.appendChild(nodeLayer);
  container.appendChild(svg);
}
