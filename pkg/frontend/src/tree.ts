// Collapsible rendering of the exported tree document.

import { escapeHtml } from './render.js';
import type { TreeNodeDoc } from './types.js';

export function countDocNodes(doc: TreeNodeDoc): number {
  if (!doc.children || doc.children.length === 0) {
    return 1;
  }
  return 1 + doc.children.reduce((sum, child) => sum + countDocNodes(child), 0);
}

function countsLabel(counts: Record<string, number>): string {
  return Object.entries(counts)
    .map(([klass, count]) => `${klass}:${count}`)
    .join(' ');
}

function renderNode(node: TreeNodeDoc): string {
  const stats = `gini ${node.gini.toFixed(3)} · counts ${countsLabel(node.counts)}`;
  if (node.kind === 'leaf') {
    return `<li class="tree-leaf" data-tree-node="leaf">
      <span class="leaf-label">predict PRI ${node.predicted}</span>
      <span class="node-stats">${stats}</span>
    </li>`;
  }
  const children = (node.children ?? []).map(renderNode).join('\n');
  const test = `${escapeHtml(node.feature)} ≤ ${node.threshold}`;
  return `<li class="tree-internal" data-tree-node="internal">
    <details open>
      <summary><span class="split-label">${test}</span> <span class="node-stats">${stats}</span></summary>
      <ul class="tree-children">${children}</ul>
    </details>
  </li>`;
}

export function renderTree(doc: TreeNodeDoc, revision: number): string {
  return `<ul class="tree-root" data-revision="${revision}" data-node-count="${countDocNodes(doc)}">
    ${renderNode(doc)}
  </ul>`;
}
