/** Response shapes of the read-only /api/* endpoints. The UI performs no
 * extraction math: every number it displays comes from one of these. */

export type EdgeKind = 'Causes' | 'Mitigates' | 'Before' | 'IsA';

/** Node color role when a focus is active. */
export type FocusRole = 'blue' | 'orange' | 'green' | 'neutral';

export interface TcagNode {
  event_type: string;
  mention_count: number;
  display_size: number;
}

export interface TcagEdge {
  kind: EdgeKind;
  left: string;
  right: string;
  count: number;
  display_thickness: number;
  style: 'solid' | 'dashed';
}

export interface TcagFilter {
  geo: string | null;
  month: string | null;
  min_edge_count: number;
  strict: boolean;
}

export interface TcagDocument {
  schema: 'tcag/1';
  generated_at: string;
  corpus_version: string;
  filter: TcagFilter;
  nodes: TcagNode[];
  edges: TcagEdge[];
  focus?: string;
  focus_colors?: Record<string, FocusRole>;
}

export interface TaxonomyType {
  name: string;
  description: string;
  parents: string[];
}

export interface TaxonomyDocument {
  version: string;
  types: TaxonomyType[];
}

export interface TimelinePoint {
  month: string;
  score: number;
}

export interface TimelineDocument {
  event: string;
  geo: string | null;
  window: number;
  strict_window: boolean;
  norm_divisor: number;
  points: TimelinePoint[];
  skipped_months: string[];
}

export interface TopStatesDocument {
  event: string;
  k: number;
  series: TimelineDocument[];
}

export interface CorrelateDocument {
  left_event: string;
  right_event: string;
  geo: string | null;
  window: number;
  months: string[];
  left: number[];
  right: number[];
  r: number | null;
  undefined: boolean;
}

export interface EvidenceItem {
  doc_id: string;
  sentence_index: number;
  text: string;
  confidence: number;
  subtype: string;
  provenance: string[];
  left_event: string;
  right_event: string;
  left_trigger: [number, number];
  right_trigger: [number, number];
}

export interface EvidenceDocument {
  kind: EdgeKind;
  left: string;
  right: string;
  total: number;
  limit: number;
  offset: number;
  items: EvidenceItem[];
}
