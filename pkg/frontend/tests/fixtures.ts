/** Canned API payloads for component tests. Shapes mirror the documented
 * /api/* responses exactly; tests treat these as the source of truth the
 * UI must reproduce. */

import type {
  CorrelateDocument,
  EvidenceDocument,
  EvidenceItem,
  FocusRole,
  TaxonomyDocument,
  TcagDocument,
  TimelineDocument,
  TopStatesDocument,
} from '../src/types';

export const MONTHS = ['2020-01', '2020-02', '2020-03', '2020-04', '2020-05'];

export function taxonomyFixture(): TaxonomyDocument {
  return {
    version: '1.0',
    types: [
      { name: 'PolicyIntervention', description: 'government response', parents: [] },
      { name: 'Lockdown', description: 'stay-at-home order', parents: ['PolicyIntervention'] },
      { name: 'DiseaseSpread', description: 'infection growth', parents: [] },
      { name: 'EconomicCrisis', description: 'economic downturn', parents: [] },
      { name: 'FearOrPanic', description: 'public anxiety', parents: [] },
    ],
  };
}

const log1p = (n: number): number => Math.log(1 + n);

export function tcagFixture(): TcagDocument {
  const nodes = [
    ['Lockdown', 40],
    ['DiseaseSpread', 55],
    ['EconomicCrisis', 21],
    ['FearOrPanic', 13],
    ['PolicyIntervention', 5],
  ].map(([event_type, mention_count]) => ({
    event_type: event_type as string,
    mention_count: mention_count as number,
    display_size: log1p(mention_count as number),
  }));
  const edges = [
    { kind: 'Causes' as const, left: 'Lockdown', right: 'EconomicCrisis', count: 4, style: 'solid' as const },
    { kind: 'Mitigates' as const, left: 'Lockdown', right: 'DiseaseSpread', count: 3, style: 'solid' as const },
    { kind: 'Before' as const, left: 'DiseaseSpread', right: 'Lockdown', count: 2, style: 'solid' as const },
    { kind: 'Causes' as const, left: 'DiseaseSpread', right: 'FearOrPanic', count: 1, style: 'solid' as const },
    { kind: 'IsA' as const, left: 'Lockdown', right: 'PolicyIntervention', count: 0, style: 'dashed' as const },
  ].map((e) => ({ ...e, display_thickness: log1p(e.count) }));
  return {
    schema: 'tcag/1',
    generated_at: '2020-06-01T00:00:00Z',
    corpus_version: 'fixturefixture00',
    filter: { geo: null, month: null, min_edge_count: 1, strict: false },
    nodes,
    edges,
  };
}

/** Color roles the API reports for focus=Lockdown: DiseaseSpread both
 * precedes (Before) and is mitigated — upstream wins, so orange;
 * EconomicCrisis is a downstream effect (green); the IsA parent stays
 * neutral. */
export const LOCKDOWN_FOCUS_COLORS: Record<string, FocusRole> = {
  Lockdown: 'blue',
  DiseaseSpread: 'orange',
  EconomicCrisis: 'green',
  FearOrPanic: 'neutral',
  PolicyIntervention: 'neutral',
};

const SCORE_BASE: Record<string, number> = {
  Lockdown: 120,
  DiseaseSpread: 260,
  EconomicCrisis: 80,
  FearOrPanic: 45,
  PolicyIntervention: 15,
};

export function timelineFixture(event: string, geo: string | null = null): TimelineDocument {
  const base = SCORE_BASE[event] ?? 50;
  return {
    event,
    geo,
    window: 3,
    strict_window: false,
    norm_divisor: 500,
    points: MONTHS.map((month, i) => ({ month, score: base + i * base * 0.25 })),
    skipped_months: [],
  };
}

export const TOP_STATE_GEOS = [
  'US-NY', 'US-CA', 'US-TX', 'US-FL', 'US-WA',
  'US-NJ', 'US-IL', 'US-MA', 'US-OH', 'US-PA',
];

export function topStatesFixture(event: string, k: number): TopStatesDocument {
  return {
    event,
    k,
    series: TOP_STATE_GEOS.slice(0, k).map((geo) => timelineFixture(event, geo)),
  };
}

export function correlateFixture(left: string, right: string): CorrelateDocument {
  const a = timelineFixture(left);
  const b = timelineFixture(right);
  return {
    left_event: left,
    right_event: right,
    geo: null,
    window: 3,
    months: MONTHS,
    left: a.points.map((p) => p.score),
    right: b.points.map((p) => p.score),
    r: 0.8731,
    undefined: false,
  };
}

export function evidenceFixture(
  kind: EvidenceDocument['kind'],
  left: string,
  right: string,
  offset: number,
  limit: number,
): EvidenceDocument {
  const total = 12;
  const items: EvidenceItem[] = [];
  for (let i = offset; i < Math.min(offset + limit, total); i++) {
    items.push({
      doc_id: `news-${String(i + 1).padStart(4, '0')}`,
      sentence_index: 0,
      text: `The ${left.toLowerCase()} led to ${right.toLowerCase()} across several regions (${i + 1}).`,
      confidence: 1 - i * 0.05,
      subtype: 'Cause',
      provenance: ['pattern'],
      left_event: `news-${i + 1}:0:1-2:${left}`,
      right_event: `news-${i + 1}:0:5-6:${right}`,
      left_trigger: [1, 2],
      right_trigger: [5, 6],
    });
  }
  return { kind, left, right, total, limit, offset, items };
}
