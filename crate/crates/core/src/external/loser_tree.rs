/*!
A tournament tree of losers over `k` sorted sources.

Each internal node remembers the loser of the match played there; slot 0
holds the overall winner. Exhausted sources compare above every live head,
and equal heads are decided by source position, so the tie rule is part of
the comparison key `(head, position)`.
*/

use std::mem::swap;

pub(crate) struct LoserTree<K> {
    heads: Vec<Option<K>>,
    tree: Vec<usize>,
}

impl<K: Ord + Copy> LoserTree<K> {
    /// `heads[i]` is the first element of source `i`, `None` if it is empty.
    pub(crate) fn new(heads: Vec<Option<K>>) -> Self {
        let k = heads.len();
        let mut lt = LoserTree {
            heads,
            tree: vec![0; k.max(1)],
        };
        if k > 1 {
            lt.tree[0] = lt.build(1);
        }
        lt
    }

    fn beats(&self, a: usize, b: usize) -> bool {
        match (self.heads[a], self.heads[b]) {
            (Some(x), Some(y)) => (x, a) < (y, b),
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => a < b,
        }
    }

    fn build(&mut self, node: usize) -> usize {
        let k = self.heads.len();
        if node >= k {
            return node - k;
        }
        let l = self.build(2 * node);
        let r = self.build(2 * node + 1);
        if self.beats(l, r) {
            self.tree[node] = r;
            l
        } else {
            self.tree[node] = l;
            r
        }
    }

    /// Source holding the smallest head, `None` once every source is drained.
    pub(crate) fn winner(&self) -> Option<(usize, K)> {
        if self.heads.is_empty() {
            return None;
        }
        let w = self.tree[0];
        self.heads[w].map(|h| (w, h))
    }

    /// Replaces the winner's head with `next` and replays its path to the root.
    pub(crate) fn replace_winner(&mut self, next: Option<K>) {
        let k = self.heads.len();
        let mut winner = self.tree[0];
        self.heads[winner] = next;
        let mut node = (winner + k) / 2;
        while node >= 1 {
            if self.beats(self.tree[node], winner) {
                swap(&mut self.tree[node], &mut winner);
            }
            node /= 2;
        }
        self.tree[0] = winner;
    }
}
