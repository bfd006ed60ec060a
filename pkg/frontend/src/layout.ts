/** Deterministic force-directed layout, DOM-free so it unit-tests as pure
 * math. Seeded initial placement on a circle, then spring forces along
 * edges, pairwise repulsion, and a centering pull. The graph is small
 * (tens of nodes), so the O(n^2) pass per iteration is fine. */

export interface LayoutEdge {
  left: string;
  right: string;
}

export interface Point {
  x: number;
  y: number;
}

/** Small deterministic PRNG (mulberry32) so layouts are reproducible. */
export function seededRandom(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  seed?: number;
}

export function forceLayout(
  nodeIds: string[],
  edges: LayoutEdge[],
  options: LayoutOptions,
): Map<string, Point> {
  const { width, height } = options;
  const iterations = options.iterations ?? 150;
  const rand = seededRandom(options.seed ?? 42);
  const cx = width / 2;
  const cy = height / 2;

  const positions = new Map<string, Point>();
  const radius = Math.min(width, height) * 0.35;
  nodeIds.forEach((id, i) => {
    const angle = (2 * Math.PI * i) / Math.max(nodeIds.length, 1);
    positions.set(id, {
      x: cx + radius * Math.cos(angle) + (rand() - 0.5) * 10,
      y: cy + radius * Math.sin(angle) + (rand() - 0.5) * 10,
    });
  });

  const springLength = radius * 0.9;
  const links = edges.filter(
    (e) => positions.has(e.left) && positions.has(e.right) && e.left !== e.right,
  );

  for (let step = 0; step < iterations; step++) {
    const cooling = 1 - step / iterations;
    const forces = new Map<string, Point>(nodeIds.map((id) => [id, { x: 0, y: 0 }]));

    for (let i = 0; i < nodeIds.length; i++) {
      for (let j = i + 1; j < nodeIds.length; j++) {
        const a = positions.get(nodeIds[i])!;
        const b = positions.get(nodeIds[j])!;
        const dx = a.x - b.x;
        const dy = a.y - b.y;
        const distSq = Math.max(dx * dx + dy * dy, 1);
        const push = (springLength * springLength * 0.6) / distSq;
        const dist = Math.sqrt(distSq);
        const fa = forces.get(nodeIds[i])!;
        const fb = forces.get(nodeIds[j])!;
        fa.x += (dx / dist) * push;
        fa.y += (dy / dist) * push;
        fb.x -= (dx / dist) * push;
        fb.y -= (dy / dist) * push;
      }
    }

    for (const edge of links) {
      const a = positions.get(edge.left)!;
      const b = positions.get(edge.right)!;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const dist = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const pull = (dist - springLength) * 0.02;
      const fa = forces.get(edge.left)!;
      const fb = forces.get(edge.right)!;
      fa.x += (dx / dist) * pull * dist * 0.05;
      fa.y += (dy / dist) * pull * dist * 0.05;
      fb.x -= (dx / dist) * pull * dist * 0.05;
      fb.y -= (dy / dist) * pull * dist * 0.05;
    }

    for (const id of nodeIds) {
      const p = positions.get(id)!;
      const f = forces.get(id)!;
      f.x += (cx - p.x) * 0.01;
      f.y += (cy - p.y) * 0.01;
      p.x += f.x * cooling;
      p.y += f.y * cooling;
      const margin = 20;
      p.x = Math.min(Math.max(p.x, margin), width - margin);
      p.y = Math.min(Math.max(p.y, margin), height - margin);
    }
  }
  return positions;
}
