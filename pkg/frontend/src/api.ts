/** Thin fetch wrappers for the /api/* endpoints. Every call takes an
 * optional AbortSignal so in-flight requests can be cancelled when the
 * view's filter changes. */

import type {
  CorrelateDocument,
  EdgeKind,
  EvidenceDocument,
  TaxonomyDocument,
  TcagDocument,
  TimelineDocument,
  TopStatesDocument,
} from './types';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`API ${status}: ${detail}`);
  }
}

export interface TcagQuery {
  geo?: string;
  month?: string;
  minCount?: number;
  strict?: boolean;
  focus?: string;
}

export interface TimelineQuery {
  event: string;
  geo?: string;
  window?: number;
  strictWindow?: boolean;
  from?: string;
  to?: string;
}

/** The client is constructed around a fetch implementation so component
 * tests can substitute a mock API. */
export class ApiClient {
  constructor(private readonly fetchImpl: typeof fetch = fetch) {}

  private async get<T>(path: string, params: URLSearchParams, signal?: AbortSignal): Promise<T> {
    const query = params.toString();
    const url = query ? `${path}?${query}` : path;
    const response = await this.fetchImpl(url, { signal });
    const body = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, String(body.detail ?? 'request failed'));
    }
    return body as T;
  }

  getTaxonomy(signal?: AbortSignal): Promise<TaxonomyDocument> {
    return this.get('/api/taxonomy', new URLSearchParams(), signal);
  }

  getTcag(query: TcagQuery = {}, signal?: AbortSignal): Promise<TcagDocument> {
    const params = new URLSearchParams();
    if (query.geo) params.set('geo', query.geo);
    if (query.month) params.set('month', query.month);
    if (query.minCount !== undefined) params.set('min_count', String(query.minCount));
    if (query.strict) params.set('strict', 'true');
    if (query.focus) params.set('focus', query.focus);
    return this.get('/api/tcag', params, signal);
  }

  getTimeline(query: TimelineQuery, signal?: AbortSignal): Promise<TimelineDocument> {
    const params = new URLSearchParams({ event: query.event });
    if (query.geo) params.set('geo', query.geo);
    if (query.window !== undefined) params.set('window', String(query.window));
    if (query.strictWindow) params.set('strict_window', 'true');
    if (query.from) params.set('from', query.from);
    if (query.to) params.set('to', query.to);
    return this.get('/api/timeline', params, signal);
  }

  getTopStates(event: string, k: number, signal?: AbortSignal): Promise<TopStatesDocument> {
    const params = new URLSearchParams({ event, k: String(k) });
    return this.get('/api/timelines/top_states', params, signal);
  }

  getCorrelation(
    leftEvent: string,
    rightEvent: string,
    geo?: string,
    signal?: AbortSignal,
  ): Promise<CorrelateDocument> {
    const params = new URLSearchParams({ left_event: leftEvent, right_event: rightEvent });
    if (geo) params.set('geo', geo);
    return this.get('/api/correlate', params, signal);
  }

  getEvidence(
    kind: EdgeKind,
    left: string,
    right: string,
    offset = 0,
    limit?: number,
    signal?: AbortSignal,
  ): Promise<EvidenceDocument> {
    const params = new URLSearchParams({ kind, left, right, offset: String(offset) });
    if (limit !== undefined) params.set('limit', String(limit));
    return this.get('/api/evidence', params, signal);
  }
}
