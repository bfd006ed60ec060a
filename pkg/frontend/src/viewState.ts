/** View state and its pure transitions. Filter changes, focus changes, and
 * selections never mutate: each transition returns a new state, and the
 * history store replays old states verbatim for back/forward. */

import type { EdgeKind } from './types';

export interface FilterState {
  geo: string | null;
  month: string | null;
  minCount: number;
  strict: boolean;
}

export interface EdgeSelection {
  kind: EdgeKind;
  left: string;
  right: string;
}

export interface ViewState {
  filter: FilterState;
  focused: string | null;
  selectedEdge: EdgeSelection | null;
  evidenceOffset: number;
}

export const INITIAL_STATE: ViewState = {
  filter: { geo: null, month: null, minCount: 1, strict: false },
  focused: null,
  selectedEdge: null,
  evidenceOffset: 0,
};

/** Changing the filter invalidates focus/selection: the new graph may not
 * contain them, and their validity is re-established against the fetched
 * graph (see pruneToGraph). */
export function withFilter(state: ViewState, filter: Partial<FilterState>): ViewState {
  return {
    filter: { ...state.filter, ...filter },
    focused: state.focused,
    selectedEdge: state.selectedEdge,
    evidenceOffset: 0,
  };
}

export function withFocus(state: ViewState, focused: string | null): ViewState {
  return { ...state, focused };
}

export function withSelectedEdge(state: ViewState, edge: EdgeSelection | null): ViewState {
  return { ...state, selectedEdge: edge, evidenceOffset: 0 };
}

export function withEvidenceOffset(state: ViewState, offset: number): ViewState {
  return { ...state, evidenceOffset: Math.max(0, offset) };
}

/** Drop focus/selection that no longer exist in the rendered graph, keeping
 * the ViewState invariants. */
export function pruneToGraph(
  state: ViewState,
  nodeTypes: ReadonlySet<string>,
  edgeKeys: ReadonlySet<string>,
): ViewState {
  let next = state;
  if (next.focused !== null && !nodeTypes.has(next.focused)) {
    next = withFocus(next, null);
  }
  const edge = next.selectedEdge;
  if (edge !== null && !edgeKeys.has(edgeKey(edge.kind, edge.left, edge.right))) {
    next = withSelectedEdge(next, null);
  }
  return next;
}

export function edgeKey(kind: string, left: string, right: string): string {
  return `${kind}:${left}:${right}`;
}

/** Linear undo/redo history over immutable states. */
export class StateHistory {
  private past: ViewState[] = [];
  private future: ViewState[] = [];

  constructor(private current: ViewState) {}

  get state(): ViewState {
    return this.current;
  }

  push(next: ViewState): ViewState {
    if (next === this.current) return this.current;
    this.past.push(this.current);
    this.current = next;
    this.future = [];
    return this.current;
  }

  canBack(): boolean {
    return this.past.length > 0;
  }

  canForward(): boolean {
    return this.future.length > 0;
  }

  back(): ViewState {
    const previous = this.past.pop();
    if (previous !== undefined) {
      this.future.push(this.current);
      this.current = previous;
    }
    return this.current;
  }

  forward(): ViewState {
    const next = this.future.pop();
    if (next !== undefined) {
      this.past.push(this.current);
      this.current = next;
    }
    return this.current;
  }
}
