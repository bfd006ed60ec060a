/** Evidence panel: the paginated sentences behind a selected edge. */

import type { EvidenceDocument } from './types';

export interface EvidenceCallbacks {
  onPage(offset: number): void;
}

export function renderEvidence(
  container: HTMLElement,
  doc: EvidenceDocument,
  callbacks: EvidenceCallbacks,
): void {
  container.replaceChildren();
  const panel = document.createElement('section');
  panel.dataset.testid = 'evidence-panel';

  const heading = document.createElement('h2');
  heading.textContent = `Evidence: ${doc.left} ${doc.kind} ${doc.right} (${doc.total})`;
  panel.appendChild(heading);

  const list = document.createElement('ol');
  list.dataset.testid = 'evidence-list';
  if (doc.offset > 0) {
    list.setAttribute('start', String(doc.offset + 1));
  }
  for (const item of doc.items) {
    const entry = document.createElement('li');
    entry.dataset.testid = 'evidence-item';
    const text = document.createElement('p');
    text.textContent = item.text;
    const meta = document.createElement('small');
    meta.textContent =
      `${item.doc_id} · ${item.subtype} · confidence ${item.confidence.toFixed(2)}` +
      ` · ${item.provenance.join('+')}`;
    entry.append(text, meta);
    list.appendChild(entry);
  }
  panel.appendChild(list);

  const pager = document.createElement('nav');
  const prev = document.createElement('button');
  prev.dataset.testid = 'evidence-prev';
  prev.textContent = 'Previous';
  prev.disabled = doc.offset === 0;
  prev.addEventListener('click', () => callbacks.onPage(Math.max(0, doc.offset - doc.limit)));

  const next = document.createElement('button');
  next.dataset.testid = 'evidence-next';
  next.textContent = 'Next';
  next.disabled = doc.offset + doc.limit >= doc.total;
  next.addEventListener('click', () => callbacks.onPage(doc.offset + doc.limit));

  pager.append(prev, next);
  panel.appendChild(pager);
  container.appendChild(panel);
}
