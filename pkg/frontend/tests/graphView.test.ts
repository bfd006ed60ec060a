/** Graph rendering against fixture payloads: counts, styling, guards. */

import { beforeEach, describe, expect, it, vi } from 'vitest';

import { SchemaMismatchError, assertTcagShape, renderGraph } from '../src/graphView';
import { EDGE_COLORS } from '../src/palette';
import { LOCKDOWN_FOCUS_COLORS, tcagFixture } from './fixtures';

const callbacks = { onFocusNode: vi.fn(), onSelectEdge: vi.fn() };
let host: HTMLElement;

beforeEach(() => {
  host = document.createElement('div');
  callbacks.onFocusNode.mockClear();
  callbacks.onSelectEdge.mockClear();
});

describe('renderGraph', () => {
  it('renders exactly one circle per node and one line per edge', () => {
    const doc = tcagFixture();
    renderGraph(host, doc, callbacks);
    expect(host.querySelectorAll('circle[data-node]')).toHaveLength(doc.nodes.length);
    expect(host.querySelectorAll('line[data-edge]')).toHaveLength(doc.edges.length);
  });

  it('colors edges by kind and dashes IsA', () => {
    renderGraph(host, tcagFixture(), callbacks);
    for (const line of host.querySelectorAll<SVGLineElement>('line[data-edge]')) {
      const kind = line.dataset.kind as keyof typeof EDGE_COLORS;
      expect(line.getAttribute('stroke')).toBe(EDGE_COLORS[kind]);
      if (kind === 'IsA') {
        expect(line.getAttribute('stroke-dasharray')).toBe('6 4');
      } else {
        expect(line.getAttribute('stroke-dasharray')).toBeNull();
      }
    }
  });

  it('sizes nodes by display_size and edges by display_thickness', () => {
    const doc = tcagFixture();
    renderGraph(host, doc, callbacks);
    const radiusOf = (eventType: string): number =>
      Number(host.querySelector(`circle[data-node="${eventType}"]`)!.getAttribute('r'));
    const biggest = doc.nodes.reduce((a, b) => (a.display_size > b.display_size ? a : b));
    const smallest = doc.nodes.reduce((a, b) => (a.display_size < b.display_size ? a : b));
    expect(radiusOf(biggest.event_type)).toBeGreaterThan(radiusOf(smallest.event_type));

    const widthOf = (key: string): number =>
      Number(host.querySelector(`line[data-edge="${key}"]`)!.getAttribute('stroke-width'));
    expect(widthOf('Causes:Lockdown:EconomicCrisis')).toBeGreaterThan(
      widthOf('Causes:DiseaseSpread:FearOrPanic'),
    );
  });

  it('applies the payload focus colors as node roles', () => {
    const doc = tcagFixture();
    doc.focus = 'Lockdown';
    doc.focus_colors = { ...LOCKDOWN_FOCUS_COLORS };
    renderGraph(host, doc, callbacks);
    const roles: Record<string, string> = {};
    for (const circle of host.querySelectorAll<SVGCircleElement>('circle[data-node]')) {
      roles[circle.dataset.node!] = circle.dataset.role!;
    }
    expect(roles).toEqual(LOCKDOWN_FOCUS_COLORS);
  });

  it('shows an empty-state message for a graph with no nodes', () => {
    const doc = tcagFixture();
    doc.nodes = [];
    doc.edges = [];
    renderGraph(host, doc, callbacks);
    expect(host.querySelector('[data-testid="empty-state"]')?.textContent).toMatch(/no events/i);
    expect(host.querySelector('svg')).toBeNull();
  });

  it('reports node clicks as focus requests and edge clicks as selections', () => {
    renderGraph(host, tcagFixture(), callbacks);
    host
      .querySelector('circle[data-node="Lockdown"]')!
      .dispatchEvent(new MouseEvent('click', { bubbles: true }));
    expect(callbacks.onFocusNode).toHaveBeenCalledWith('Lockdown');

    host
      .querySelector('line[data-edge="Causes:Lockdown:EconomicCrisis"]')!
      .dispatchEvent(new MouseEvent('click', { bubbles: true }));
    expect(callbacks.onSelectEdge).toHaveBeenCalledWith({
      kind: 'Causes',
      left: 'Lockdown',
      right: 'EconomicCrisis',
    });
  });

  it('does not treat IsA edges as selectable', () => {
    renderGraph(host, tcagFixture(), callbacks);
    host
      .querySelector('line[data-edge="IsA:Lockdown:PolicyIntervention"]')!
      .dispatchEvent(new MouseEvent('click', { bubbles: true }));
    expect(callbacks.onSelectEdge).not.toHaveBeenCalled();
  });
});

describe('assertTcagShape', () => {
  it('accepts the fixture document', () => {
    expect(() => assertTcagShape(tcagFixture())).not.toThrow();
  });

  it.each([
    [null],
    [{ schema: 'bogus/9', nodes: [], edges: [] }],
    [{ schema: 'tcag/1', nodes: 'nope', edges: [] }],
    [{ schema: 'tcag/1', nodes: [{ event_type: 7, mention_count: 'x' }], edges: [] }],
  ])('rejects malformed payload %#', (payload) => {
    expect(() => assertTcagShape(payload)).toThrow(SchemaMismatchError);
  });
});
