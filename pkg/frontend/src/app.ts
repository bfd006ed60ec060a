/** Application shell: filter bar, graph, timeline/evidence side panels.
 *
 * All data flows one way: ViewState transitions (pure) → API fetches →
 * renderers. Filter or focus changes cancel any in-flight graph request.
 * The fetch implementation is injected so component tests can run against
 * a mock API. */

import { ApiClient, ApiError } from './api';
import { renderEvidence } from './evidencePanel';
import { SchemaMismatchError, renderGraph } from './graphView';
import { renderEdgeTimelines, renderNodeTimeline, renderTopStates } from './timelinePanel';
import type { EdgeSelection, ViewState } from './viewState';
import {
  INITIAL_STATE,
  StateHistory,
  edgeKey,
  pruneToGraph,
  withEvidenceOffset,
  withFilter,
  withFocus,
  withSelectedEdge,
} from './viewState';
import type { TcagDocument } from './types';

export class App {
  private readonly api: ApiClient;
  private readonly history = new StateHistory(INITIAL_STATE);
  private graphAbort: AbortController | null = null;
  private pending: Promise<void> = Promise.resolve();

  private readonly errorHost: HTMLElement;
  private readonly controls: HTMLElement;
  private readonly graphHost: HTMLElement;
  private readonly timelineHost: HTMLElement;
  private readonly evidenceHost: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    fetchImpl: typeof fetch,
  ) {
    this.api = new ApiClient(fetchImpl);
    this.errorHost = document.createElement('div');
    this.controls = document.createElement('form');
    this.graphHost = document.createElement('div');
    this.graphHost.dataset.testid = 'graph-host';
    this.timelineHost = document.createElement('div');
    this.evidenceHost = document.createElement('div');
    this.buildControls();
    this.root.replaceChildren(
      this.errorHost,
      this.controls,
      this.graphHost,
      this.timelineHost,
      this.evidenceHost,
    );
  }

  get state(): ViewState {
    return this.history.state;
  }

  /** Resolves when every fetch/render kicked off so far has settled. */
  async whenIdle(): Promise<void> {
    // Follow the chain until no task appended new work while we waited.
    let settled: Promise<void>;
    do {
      settled = this.pending;
      await settled;
    } while (settled !== this.pending);
  }

  start(): void {
    this.refreshGraph();
  }

  // -- state transitions ----------------------------------------------------

  applyFilter(filter: Partial<import('./viewState').FilterState>): void {
    this.history.push(withFilter(this.state, filter));
    this.refreshGraph();
  }

  focusNode(eventType: string): void {
    this.history.push(withFocus(this.state, eventType));
    this.refreshGraph();
    this.loadNodePanel(eventType);
  }

  selectEdge(edge: EdgeSelection): void {
    this.history.push(withSelectedEdge(this.state, edge));
    this.loadEdgePanels(edge, 0);
  }

  goBack(): void {
    this.history.back();
    this.refreshGraph();
  }

  goForward(): void {
    this.history.forward();
    this.refreshGraph();
  }

  // -- data loading ---------------------------------------------------------

  private track(task: Promise<void>): void {
    this.pending = this.pending.then(() => task).catch(() => undefined);
  }

  private refreshGraph(): void {
    this.graphAbort?.abort();
    const abort = new AbortController();
    this.graphAbort = abort;
    const state = this.state;
    this.track(
      (async () => {
        try {
          const doc = await this.api.getTcag(
            {
              geo: state.filter.geo ?? undefined,
              month: state.filter.month ?? undefined,
              minCount: state.filter.minCount,
              strict: state.filter.strict,
              focus: state.focused ?? undefined,
            },
            abort.signal,
          );
          if (abort.signal.aborted) return;
          this.clearError();
          renderGraph(this.graphHost, doc, {
            onFocusNode: (eventType) => this.focusNode(eventType),
            onSelectEdge: (edge) => this.selectEdge(edge),
          });
          this.pruneState(doc);
        } catch (err) {
          if (abort.signal.aborted) return;
          if (err instanceof ApiError && err.status === 404 && state.focused !== null) {
            // The new filter excludes the focused node; drop the focus and
            // show the unfocused graph instead of an error.
            this.history.push(withFocus(this.state, null));
            this.refreshGraph();
            return;
          }
          this.showError(err, () => this.refreshGraph());
          if (err instanceof SchemaMismatchError) {
            this.graphHost.replaceChildren(); // no partial render
          }
        }
      })(),
    );
  }

  private pruneState(doc: TcagDocument): void {
    const nodeTypes = new Set(doc.nodes.map((n) => n.event_type));
    const edgeKeys = new Set(doc.edges.map((e) => edgeKey(e.kind, e.left, e.right)));
    const pruned = pruneToGraph(this.state, nodeTypes, edgeKeys);
    if (pruned !== this.state) {
      this.history.push(pruned);
    }
  }

  private loadNodePanel(eventType: string): void {
    const geo = this.state.filter.geo ?? undefined;
    this.track(
      (async () => {
        try {
          const series = await this.api.getTimeline({ event: eventType, geo });
          renderNodeTimeline(this.timelineHost, series);
          this.appendStatesControl(eventType);
        } catch (err) {
          this.markPanelStale(this.timelineHost, err, () => this.loadNodePanel(eventType));
        }
      })(),
    );
  }

  private loadTopStates(eventType: string, k: number): void {
    this.track(
      (async () => {
        try {
          const doc = await this.api.getTopStates(eventType, k);
          renderTopStates(this.timelineHost, doc.series);
        } catch (err) {
          this.markPanelStale(this.timelineHost, err, () => this.loadTopStates(eventType, k));
        }
      })(),
    );
  }

  private loadEdgePanels(edge: EdgeSelection, offset: number): void {
    const geo = this.state.filter.geo ?? undefined;
    this.track(
      (async () => {
        try {
          const [left, right, correlation] = await Promise.all([
            this.api.getTimeline({ event: edge.left, geo }),
            this.api.getTimeline({ event: edge.right, geo }),
            this.api.getCorrelation(edge.left, edge.right, geo),
          ]);
          renderEdgeTimelines(this.timelineHost, left, right, correlation);
        } catch (err) {
          this.markPanelStale(this.timelineHost, err, () => this.loadEdgePanels(edge, offset));
        }
        try {
          const evidence = await this.api.getEvidence(edge.kind, edge.left, edge.right, offset);
          renderEvidence(this.evidenceHost, evidence, {
            onPage: (nextOffset) => {
              this.history.push(withEvidenceOffset(this.state, nextOffset));
              this.loadEdgePanels(edge, nextOffset);
            },
          });
        } catch (err) {
          this.markPanelStale(this.evidenceHost, err, () => this.loadEdgePanels(edge, offset));
        }
      })(),
    );
  }

  // -- chrome ---------------------------------------------------------------

  private buildControls(): void {
    this.controls.dataset.testid = 'filter-bar';
    this.controls.addEventListener('submit', (ev) => ev.preventDefault());

    const geo = document.createElement('input');
    geo.dataset.testid = 'filter-geo';
    geo.placeholder = 'geo (e.g. US-NY)';

    const month = document.createElement('input');
    month.dataset.testid = 'filter-month';
    month.placeholder = 'month (YYYY-MM)';

    const minCount = document.createElement('input');
    minCount.dataset.testid = 'filter-min-count';
    minCount.type = 'number';
    minCount.min = '0';
    minCount.value = '1';

    const strict = document.createElement('input');
    strict.dataset.testid = 'filter-strict';
    strict.type = 'checkbox';

    const apply = document.createElement('button');
    apply.dataset.testid = 'filter-apply';
    apply.textContent = 'Apply';
    apply.addEventListener('click', () => {
      this.applyFilter({
        geo: geo.value.trim() || null,
        month: month.value.trim() || null,
        minCount: Number(minCount.value) || 0,
        strict: strict.checked,
      });
    });

    const back = document.createElement('button');
    back.dataset.testid = 'nav-back';
    back.textContent = 'Back';
    back.addEventListener('click', () => this.goBack());

    const forward = document.createElement('button');
    forward.dataset.testid = 'nav-forward';
    forward.textContent = 'Forward';
    forward.addEventListener('click', () => this.goForward());

    this.controls.append(geo, month, minCount, strict, apply, back, forward);
  }

  private appendStatesControl(eventType: string): void {
    const panel = this.timelineHost.querySelector('[data-testid="timeline-panel"]');
    if (panel === null) return;
    const button = document.createElement('button');
    button.dataset.testid = 'show-top-states';
    button.textContent = 'Top states';
    button.addEventListener('click', () => this.loadTopStates(eventType, 10));
    panel.appendChild(button);
  }

  private showError(err: unknown, retry: () => void): void {
    this.errorHost.replaceChildren();
    const banner = document.createElement('div');
    banner.dataset.testid = 'error-banner';
    banner.setAttribute('role', 'alert');
    const message = document.createElement('span');
    message.textContent = err instanceof Error ? err.message : 'request failed';
    const retryButton = document.createElement('button');
    retryButton.dataset.testid = 'error-retry';
    retryButton.textContent = 'Retry';
    retryButton.addEventListener('click', () => {
      this.clearError();
      retry();
    });
    banner.append(message, retryButton);
    this.errorHost.appendChild(banner);
  }

  private clearError(): void {
    this.errorHost.replaceChildren();
  }

  private markPanelStale(host: HTMLElement, err: unknown, retry: () => void): void {
    const panel = host.firstElementChild as HTMLElement | null;
    if (panel !== null) {
      panel.dataset.stale = 'true';
    }
    this.showError(err, retry);
  }
}

export function createApp(root: HTMLElement, fetchImpl: typeof fetch): App {
  return new App(root, fetchImpl);
}
