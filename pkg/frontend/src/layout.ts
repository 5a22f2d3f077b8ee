// Deterministic force layout. Same graph + same seed key = same pixel
// positions, so two sessions looking at one graph see one picture and
// screenshots stay comparable. No Math.random anywhere.

export interface Point {
  x: number;
  y: number;
}

export function hashString(text: string): number {
  // FNV-1a, 32 bit
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193);
  }
  return hash >>> 0;
}

export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) | 0;
    let t = Math.imul(state ^ (state >>> 15), 1 | state);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

const ITERATIONS = 120;
const PADDING = 24;

export function computeLayout(
  nodeIds: Iterable<string>,
  edgePairs: Array<[string, string]>,
  width: number,
  height: number,
  seedKey: string,
): Map<string, Point> {
  const ids = [...nodeIds].sort();
  const positions = new Map<string, Point>();
  if (ids.length === 0) return positions;

  const rand = mulberry32(hashString(seedKey));
  const cx = width / 2;
  const cy = height / 2;
  const ring = Math.min(width, height) / 3;
  ids.forEach((id, i) => {
    const angle = (2 * Math.PI * i) / ids.length;
    positions.set(id, {
      x: cx + ring * Math.cos(angle) + (rand() - 0.5) * 24,
      y: cy + ring * Math.sin(angle) + (rand() - 0.5) * 24,
    });
  });
  if (ids.length === 1) {
    positions.set(ids[0]!, { x: cx, y: cy });
    return positions;
  }

  const edges = edgePairs.filter(([a, b]) => positions.has(a) && positions.has(b));
  const k = Math.sqrt((width * height) / ids.length) * 0.55;

  for (let iter = 0; iter < ITERATIONS; iter++) {
    const cooling = 1 - iter / ITERATIONS;
    const maxStep = 14 * cooling + 1;
    const force = new Map(ids.map((id) => [id, { x: 0, y: 0 }]));

    for (let i = 0; i < ids.length; i++) {
      for (let j = i + 1; j < ids.length; j++) {
        const a = positions.get(ids[i]!)!;
        const b = positions.get(ids[j]!)!;
        const dx = a.x - b.x;
        const dy = a.y - b.y;
        const dist = Math.max(Math.hypot(dx, dy), 0.01);
        const repel = (k * k) / dist;
        const fa = force.get(ids[i]!)!;
        const fb = force.get(ids[j]!)!;
        fa.x += (dx / dist) * repel;
        fa.y += (dy / dist) * repel;
        fb.x -= (dx / dist) * repel;
        fb.y -= (dy / dist) * repel;
      }
    }

    for (const [sourceId, targetId] of edges) {
      const a = positions.get(sourceId)!;
      const b = positions.get(targetId)!;
      const dx = a.x - b.x;
      const dy = a.y - b.y;
      const dist = Math.max(Math.hypot(dx, dy), 0.01);
      const attract = (dist * dist) / k;
      const fa = force.get(sourceId)!;
      const fb = force.get(targetId)!;
      fa.x -= (dx / dist) * attract;
      fa.y -= (dy / dist) * attract;
      fb.x += (dx / dist) * attract;
      fb.y += (dy / dist) * attract;
    }

    for (const id of ids) {
      const p = positions.get(id)!;
      const f = force.get(id)!;
      // gentle pull toward the center keeps disconnected pieces on screen
      f.x += (cx - p.x) * 0.03;
      f.y += (cy - p.y) * 0.03;
      const magnitude = Math.max(Math.hypot(f.x, f.y), 0.01);
      const step = Math.min(magnitude, maxStep);
      p.x += (f.x / magnitude) * step;
      p.y += (f.y / magnitude) * step;
      p.x = Math.min(Math.max(p.x, PADDING), width - PADDING);
      p.y = Math.min(Math.max(p.y, PADDING), height - PADDING);
    }
  }
  return positions;
}
