//! Todd–Coxeter coset enumeration (HLT strategy with a coincidence queue).
//!
//! Letters are numbered `0 = S`, `1 = S⁻¹`, `2 = U`, `3 = U⁻¹`, so the inverse
//! of letter `x` is `x ^ 1`.

pub(crate) const NONE: u32 = u32::MAX;

pub(crate) const LETTERS: usize = 4;

#[inline]
fn inv(x: u8) -> u8 {
    x ^ 1
}

/// `SL(2,ℤ) = ⟨S, U | S⁴, U³, S²US⁻²U⁻¹⟩`.
pub(crate) fn sl_relators() -> Vec<Vec<u8>> {
    vec![vec![0, 0, 0, 0], vec![2, 2, 2], vec![0, 0, 2, 1, 1, 3]]
}

/// `PSL(2,ℤ) = ⟨s, u | s², u³⟩`.
pub(crate) fn psl_relators() -> Vec<Vec<u8>> {
    vec![vec![0, 0], vec![2, 2, 2]]
}

/// Right action of the four letters on `0..n`, standardized so that a
/// breadth-first search from coset 0 visits cosets in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Action {
    pub rows: Vec<[u32; LETTERS]>,
}

impl Action {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn apply(&self, c: u32, x: u8) -> u32 {
        self.rows[c as usize][x as usize]
    }

    pub fn is_consistent(&self) -> bool {
        self.rows.iter().enumerate().all(|(c, row)| {
            row.iter().enumerate().all(|(x, &d)| {
                (d as usize) < self.rows.len() && self.rows[d as usize][x ^ 1] == c as u32
            })
        })
    }
}

/// Whether two transitive actions are isomorphic as sets with an action
/// of the letters `letters`, i.e. whether the stabilizers are conjugate.
pub(crate) fn isomorphic(a: &Action, b: &Action, letters: &[u8]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    'candidate: for start in 0..n as u32 {
        let mut map = vec![NONE; n];
        let mut used = vec![false; n];
        map[0] = start;
        used[start as usize] = true;
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let c = queue[head];
            head += 1;
            for &x in letters {
                let (ca, cb) = (a.apply(c, x), b.apply(map[c as usize], x));
                match map[ca as usize] {
                    NONE => {
                        if used[cb as usize] {
                            continue 'candidate;
                        }
                        map[ca as usize] = cb;
                        used[cb as usize] = true;
                        queue.push(ca);
                    }
                    m if m != cb => continue 'candidate,
                    _ => {}
                }
            }
        }
        if queue.len() == n {
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Budget;

struct Enumerator {
    table: Vec<[u32; LETTERS]>,
    parent: Vec<u32>,
    live: usize,
    max_live: usize,
    max_total: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(max_live: usize) -> Self {
        Enumerator {
            table: vec![[NONE; LETTERS]],
            parent: vec![0],
            live: 1,
            max_live,
            max_total: max_live.saturating_mul(4).max(1 << 12),
            queue: Vec::new(),
        }
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: u8) -> Result<(), Budget> {
        if self.live >= self.max_live || self.table.len() >= self.max_total {
            return Err(Budget);
        }
        let d = self.table.len() as u32;
        self.table.push([NONE; LETTERS]);
        self.parent.push(d);
        self.live += 1;
        self.table[c as usize][x as usize] = d;
        self.table[d as usize][inv(x) as usize] = c;
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop as usize] = keep;
        self.live -= 1;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..LETTERS as u8 {
                let d = self.table[g as usize][x as usize];
                if d == NONE {
                    continue;
                }
                self.table[d as usize][inv(x) as usize] = NONE;
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.table[mu as usize][x as usize];
                let nu_xi = self.table[nu as usize][inv(x) as usize];
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else if nu_xi != NONE {
                    self.merge(mu, nu_xi);
                } else {
                    self.table[mu as usize][x as usize] = nu;
                    self.table[nu as usize][inv(x) as usize] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, w: &[u8]) -> Result<(), Budget> {
        let mut f = c;
        let mut b = c;
        let mut i: isize = 0;
        let mut j: isize = w.len() as isize - 1;
        loop {
            while i <= j {
                let next = self.table[f as usize][w[i as usize] as usize];
                if next == NONE {
                    break;
                }
                f = next;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let next = self.table[b as usize][inv(w[j as usize]) as usize];
                if next == NONE {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.table[f as usize][x as usize] = b;
                self.table[b as usize][inv(x) as usize] = f;
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    fn run(mut self, relators: &[Vec<u8>], subgroup: &[Vec<u8>]) -> Result<Action, Budget> {
        if self.max_live == 0 {
            return Err(Budget);
        }
        for w in subgroup {
            self.scan_and_fill(0, w)?;
        }
        let mut c = 0u32;
        while (c as usize) < self.table.len() {
            if self.is_live(c) {
                for r in relators {
                    self.scan_and_fill(c, r)?;
                    if !self.is_live(c) {
                        break;
                    }
                }
                if self.is_live(c) {
                    for x in 0..LETTERS as u8 {
                        if self.table[c as usize][x as usize] == NONE {
                            self.define(c, x)?;
                        }
                    }
                }
            }
            c += 1;
        }
        Ok(self.standardize())
    }

    fn standardize(mut self) -> Action {
        let mut order = vec![0u32];
        let mut number = vec![NONE; self.table.len()];
        number[0] = 0;
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for x in 0..LETTERS {
                let d = self.table[c as usize][x];
                let d = self.rep(d);
                if number[d as usize] == NONE {
                    number[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let rows = order
            .iter()
            .map(|&c| {
                let mut row = [NONE; LETTERS];
                for (x, slot) in row.iter_mut().enumerate() {
                    let d = self.table[c as usize][x];
                    *slot = number[self.rep(d) as usize];
                }
                row
            })
            .collect();
        let action = Action { rows };
        debug_assert!(action.is_consistent());
        action
    }
}

/// Enumerates cosets of the subgroup generated by `subgroup` words in the
/// group presented by `relators`, with at most `max_live` simultaneously live
/// cosets.
pub(crate) fn enumerate(relators: &[Vec<u8>], subgroup: &[Vec<u8>], max_live: usize) -> Result<Action, Budget> {
    Enumerator::new(max_live).run(relators, subgroup)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_group_has_one_coset() {
        let a = enumerate(&sl_relators(), &[vec![0], vec![2]], 10).unwrap();
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn cyclic_subgroups_of_finite_quotients() {
        // ⟨U⟩ in ⟨s,u | s², u³, (su)^3⟩ ≅ A4 has index 4.
        let rels = vec![vec![0, 0], vec![2, 2, 2], vec![0, 2, 0, 2, 0, 2]];
        let a = enumerate(&rels, &[vec![2]], 100).unwrap();
        assert_eq!(a.len(), 4);
        assert!(a.is_consistent());
        // Trivial subgroup: the group order.
        assert_eq!(enumerate(&rels, &[], 100).unwrap().len(), 12);
    }

    #[test]
    fn budget_is_reported() {
        assert_eq!(enumerate(&psl_relators(), &[], 1000), Err(Budget));
        assert_eq!(enumerate(&psl_relators(), &[vec![0]], 0), Err(Budget));
    }
}
