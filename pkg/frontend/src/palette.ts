/** Fixed colors. Edge colors: Causes green, Mitigates pink, Before purple;
 * IsA is structural and stays gray. Node focus roles arrive from the API
 * (blue focused, orange upstream, green downstream) and map to hex here. */

import type { EdgeKind, FocusRole } from './types';

export const EDGE_COLORS: Record<EdgeKind, string> = {
  Causes: '#2e8b57',
  Mitigates: '#e75480',
  Before: '#7d4dbb',
  IsA: '#9aa0a6',
};

export const FOCUS_COLORS: Record<FocusRole, string> = {
  blue: '#3366cc',
  orange: '#e8710a',
  green: '#34a853',
  neutral: '#c8cdd3',
};

/** Node fill when no focus is active. */
export const NODE_DEFAULT_COLOR = '#6b88a8';
