//! Immaculate and peak composition tableaux, their `p`/`m` statistics, and
//! the peak composition poset.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{is_peak_composition, peak_compositions, Composition};
use crate::error::{invalid, Result};
use crate::rational::{pow2, Rational};

/// `α ⊂_s β`: `|β| = |α| + s`, `α_i ≤ β_i` for `i ≤ ℓ(α)`, `ℓ(β) ≤ ℓ(α) + 1`.
pub fn subset_s(alpha: &Composition, beta: &Composition, s: u32) -> bool {
    beta.size() == alpha.size() + s
        && beta.len() >= alpha.len()
        && beta.len() <= alpha.len() + 1
        && alpha.parts().iter().zip(beta.parts()).all(|(a, b)| a <= b)
}

/// All `β` with `α ⊂_s β`, in lexicographic order.
pub fn supersets_s(alpha: &Composition, s: u32) -> Vec<Composition> {
    fn go(alpha: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if i == alpha.len() {
            let mut parts = cur.clone();
            if left > 0 {
                parts.push(left);
            }
            out.push(Composition::from_parts_unchecked(parts));
            return;
        }
        for d in 0..=left {
            cur.push(alpha[i] + d);
            go(alpha, i + 1, left - d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(alpha.parts(), 0, s, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// A filling of a composition diagram, rows listed top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ImmaculateTableau {
    shape: Composition,
    rows: Vec<Vec<u32>>,
}

impl ImmaculateTableau {
    /// Validates row monotonicity, the strictly increasing first column, and
    /// that the rows fit the shape.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let shape = Composition::new(rows.iter().map(|r| r.len() as u32).collect())?;
        if rows.iter().flatten().any(|&x| x == 0) {
            return invalid("tableau entries must be positive");
        }
        if rows.iter().any(|r| r.windows(2).any(|w| w[0] > w[1])) {
            return invalid("rows must weakly increase");
        }
        if rows.windows(2).any(|w| w[0][0] >= w[1][0]) {
            return invalid("first column must strictly increase");
        }
        Ok(ImmaculateTableau { shape, rows })
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Number of cells labelled `i`, for `i = 1..max`.
    pub fn content(&self) -> Vec<u32> {
        let max = self.rows.iter().flatten().copied().max().unwrap_or(0);
        let mut c = vec![0; max as usize];
        for &x in self.rows.iter().flatten() {
            c[x as usize - 1] += 1;
        }
        c
    }

    /// Row lengths of the cells labelled `≤ i`, empty rows dropped.
    pub fn prefix_shape(&self, i: u32) -> Vec<u32> {
        self.rows
            .iter()
            .map(|r| r.iter().filter(|&&x| x <= i).count() as u32)
            .filter(|&c| c > 0)
            .collect()
    }

    /// Every label prefix forms a peak composition.
    pub fn has_peak_prefixes(&self) -> bool {
        let max = self.rows.iter().flatten().copied().max().unwrap_or(0);
        (1..=max).all(|i| {
            let prefix = self.prefix_shape(i);
            prefix.is_empty() || is_peak_composition(&Composition::from_parts_unchecked(prefix))
        })
    }

    /// Distinct values per row minus one, summed over rows.
    pub fn p_stat(&self) -> u32 {
        self.rows
            .iter()
            .map(|r| {
                let mut v = r.clone();
                v.dedup();
                v.len() as u32 - 1
            })
            .sum()
    }

    /// First-column cells whose right and lower neighbours both exist and
    /// carry the same label.
    pub fn m_stat(&self) -> u32 {
        self.rows
            .windows(2)
            .filter(|w| w[0].len() >= 2 && w[0][1] == w[1][0])
            .count() as u32
    }

    /// `2^{p(T) - m(T)}`.
    pub fn weight(&self) -> Rational {
        pow2(self.p_stat() as i64 - self.m_stat() as i64)
    }

    fn reading_word(&self) -> Vec<u32> {
        self.rows.iter().flatten().copied().collect()
    }
}

impl fmt::Display for ImmaculateTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "|{}|", cells.join("|"))?;
        }
        Ok(())
    }
}

/// An immaculate tableau whose label prefixes are all peak compositions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PeakCompositionTableau(ImmaculateTableau);

impl PeakCompositionTableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let t = ImmaculateTableau::new(rows)?;
        if !t.has_peak_prefixes() {
            return invalid("a label prefix is not a peak composition");
        }
        Ok(PeakCompositionTableau(t))
    }

    pub fn into_inner(self) -> ImmaculateTableau {
        self.0
    }
}

impl Deref for PeakCompositionTableau {
    type Target = ImmaculateTableau;
    fn deref(&self) -> &ImmaculateTableau {
        &self.0
    }
}

impl fmt::Display for PeakCompositionTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Places labels `1, 2, …` in turn, extending row ends; at most one new row
/// may start per label, always the topmost empty one.
fn enumerate(shape: &Composition, content: &Composition, peak_prefixes: bool) -> Result<Vec<ImmaculateTableau>> {
    if shape.size() != content.size() {
        return invalid(format!("shape {shape} and content {content} have different sizes"));
    }
    struct Search<'a> {
        shape: &'a [u32],
        content: &'a [u32],
        peak: bool,
        rows: Vec<Vec<u32>>,
        started: usize,
        out: Vec<ImmaculateTableau>,
    }

    impl Search<'_> {
        fn label(&mut self, v: usize) {
            if v == self.content.len() {
                if self.started == self.shape.len() {
                    self.out.push(ImmaculateTableau {
                        shape: Composition::from_parts_unchecked(self.shape.to_vec()),
                        rows: self.rows.clone(),
                    });
                }
                return;
            }
            let count = self.content[v];
            // without a new row
            self.distribute(v, 0, count, false);
            // with row `started` newly begun by this label
            if self.started < self.shape.len() {
                let r = self.started;
                for first in 1..=count.min(self.shape[r]) {
                    self.rows[r].extend(std::iter::repeat_n(v as u32 + 1, first as usize));
                    self.started += 1;
                    self.distribute(v, 0, count - first, true);
                    self.started -= 1;
                    let len = self.rows[r].len() - first as usize;
                    self.rows[r].truncate(len);
                }
            }
        }

        /// Spreads `left` copies of label `v+1` over already-started rows.
        fn distribute(&mut self, v: usize, row: usize, left: u32, opened: bool) {
            let existing = if opened { self.started - 1 } else { self.started };
            if row == existing {
                if left == 0 && self.prefix_ok() {
                    self.label(v + 1);
                }
                return;
            }
            let room = self.shape[row] - self.rows[row].len() as u32;
            for k in 0..=left.min(room) {
                self.rows[row].extend(std::iter::repeat_n(v as u32 + 1, k as usize));
                self.distribute(v, row + 1, left - k, opened);
                let len = self.rows[row].len() - k as usize;
                self.rows[row].truncate(len);
            }
        }

        fn prefix_ok(&self) -> bool {
            if !self.peak {
                return true;
            }
            let lens: Vec<u32> = self.rows[..self.started].iter().map(|r| r.len() as u32).collect();
            lens.is_empty() || is_peak_composition(&Composition::from_parts_unchecked(lens))
        }
    }

    let mut search = Search {
        shape: shape.parts(),
        content: content.parts(),
        peak: peak_prefixes,
        rows: vec![Vec::new(); shape.len()],
        started: 0,
        out: Vec::new(),
    };
    search.label(0);
    let mut out = search.out;
    out.sort_by_key(ImmaculateTableau::reading_word);
    Ok(out)
}

pub fn immaculate_tableaux(shape: &Composition, content: &Composition) -> Result<Vec<ImmaculateTableau>> {
    enumerate(shape, content, false)
}

pub fn pct(shape: &Composition, content: &Composition) -> Result<Vec<PeakCompositionTableau>> {
    Ok(enumerate(shape, content, true)?.into_iter().map(PeakCompositionTableau).collect())
}

/// `Σ_{T ∈ PCT(β, α)} 2^{p(T) - m(T)}`.
pub fn pct_weight_sum(beta: &Composition, alpha: &Composition) -> Result<Rational> {
    Ok(pct(beta, alpha)?.iter().map(|t| t.weight()).sum())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosetEdge {
    pub lower: Composition,
    pub upper: Composition,
    /// 1-based part that grew; `ℓ(lower) + 1` when a new last part was appended.
    pub row: usize,
}

pub fn poset_covers(alpha: &Composition) -> Result<Vec<PosetEdge>> {
    if !is_peak_composition(alpha) {
        return invalid(format!("{alpha} is not a peak composition"));
    }
    let mut edges = Vec::new();
    for m in 0..=alpha.len() {
        let mut parts = alpha.parts().to_vec();
        if m == alpha.len() {
            parts.push(1);
        } else {
            parts[m] += 1;
        }
        let upper = Composition::from_parts_unchecked(parts);
        if is_peak_composition(&upper) {
            edges.push(PosetEdge { lower: alpha.clone(), upper, row: m + 1 });
        }
    }
    Ok(edges)
}

/// Number of standard peak composition tableaux of the given shape.
pub fn standard_pct(shape: &Composition) -> Result<usize> {
    if !is_peak_composition(shape) {
        return invalid(format!("{shape} is not a peak composition"));
    }
    let ones = Composition::from_parts_unchecked(vec![1; shape.size() as usize]);
    Ok(pct(shape, &ones)?.len())
}

/// Maximal chains from `(1)` to every peak composition of `n`, counted by
/// walking cover relations.
pub fn maximal_chain_counts(n: u32) -> Result<BTreeMap<Composition, u64>> {
    let mut level: BTreeMap<Composition, u64> = [(Composition::from_parts_unchecked(vec![1]), 1)].into();
    for _ in 1..n {
        let mut next = BTreeMap::new();
        for (c, count) in &level {
            for e in poset_covers(c)? {
                *next.entry(e.upper).or_insert(0) += count;
            }
        }
        level = next;
    }
    debug_assert!(level.keys().all(|c| peak_compositions(n).is_ok_and(|pc| pc.contains(c))));
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use crate::rational::int;

    #[test]
    fn subset_relation() {
        assert!(subset_s(&comp![2], &comp![2, 1], 1));
        assert!(!subset_s(&comp![2], &comp![1, 2], 1));
        assert!(subset_s(&comp![3, 2], &comp![4, 2, 1], 2));
        assert!(!subset_s(&comp![3, 2], &comp![4, 1, 2], 2));
        for s in 1..4 {
            for b in supersets_s(&comp![2, 1], s) {
                assert!(subset_s(&comp![2, 1], &b, s));
            }
        }
    }

    /// Brute force over all fillings with the given content.
    fn brute_immaculate(shape: &Composition, content: &Composition) -> usize {
        let cells = shape.size() as usize;
        let labels = content.len() as u32;
        let mut count = 0;
        let mut filling = vec![1u32; cells];
        loop {
            let mut rows = Vec::new();
            let mut at = 0;
            for &p in shape.parts() {
                rows.push(filling[at..at + p as usize].to_vec());
                at += p as usize;
            }
            let t = ImmaculateTableau::new(rows);
            if let Ok(t) = t {
                let mut c = t.content();
                c.resize(content.len(), 0);
                if c == content.parts() {
                    count += 1;
                }
            }
            let mut i = 0;
            loop {
                if i == cells {
                    return count;
                }
                filling[i] += 1;
                if filling[i] <= labels {
                    break;
                }
                filling[i] = 1;
                i += 1;
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let cases = [
            (comp![2, 1], comp![1, 1, 1]),
            (comp![3, 4, 2], comp![2, 2, 1, 4]),
            (comp![2, 2, 2], comp![1, 2, 1, 2]),
            (comp![1, 3], comp![2, 1, 1]),
        ];
        for (shape, content) in cases {
            assert_eq!(immaculate_tableaux(&shape, &content).unwrap().len(), brute_immaculate(&shape, &content));
        }
        assert_eq!(immaculate_tableaux(&comp![2, 1], &comp![1, 1, 1]).unwrap().len(), 2);
    }

    #[test]
    fn diagonal_tableau_is_unique() {
        for a in [comp![2, 3], comp![3, 4, 2], comp![2, 2, 1]] {
            let t = pct(&a, &a).unwrap();
            assert_eq!(t.len(), 1);
            assert_eq!((t[0].p_stat(), t[0].m_stat()), (0, 0));
            assert_eq!(immaculate_tableaux(&a, &a).unwrap().len(), 1);
        }
        assert_eq!(pct_weight_sum(&comp![2, 3], &comp![2, 3]).unwrap(), int(1));
    }

    #[test]
    fn pct_342_2214() {
        let ts = pct(&comp![3, 4, 2], &comp![2, 2, 1, 4]).unwrap();
        let rows: Vec<Vec<Vec<u32>>> = ts.iter().map(|t| t.rows().to_vec()).collect();
        assert_eq!(
            rows,
            vec![
                vec![vec![1, 1, 2], vec![2, 3, 4, 4], vec![4, 4]],
                vec![vec![1, 1, 3], vec![2, 2, 4, 4], vec![4, 4]],
                vec![vec![1, 1, 4], vec![2, 2, 3, 4], vec![4, 4]],
                vec![vec![1, 1, 4], vec![2, 2, 4, 4], vec![3, 4]],
            ]
        );
        let t = ImmaculateTableau::new(vec![vec![1, 1, 2], vec![2, 4, 4, 4], vec![3, 4]]).unwrap();
        assert!(immaculate_tableaux(&comp![3, 4, 2], &comp![2, 2, 1, 4]).unwrap().contains(&t));
        assert!(!t.has_peak_prefixes());
        assert!(PeakCompositionTableau::new(t.rows().to_vec()).is_err());
    }

    #[test]
    fn small_pct() {
        let ts = pct(&comp![2, 1], &comp![1, 1, 1]).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].rows(), &[vec![1, 2], vec![3]]);
        assert!(pct(&comp![2, 1], &comp![2, 2]).is_err());
    }

    #[test]
    fn statistics_of_worked_tableau() {
        let t = ImmaculateTableau::new(vec![
            vec![1, 1, 2],
            vec![2, 3, 3, 5],
            vec![3, 4],
            vec![4, 4, 5],
            vec![5],
        ])
        .unwrap();
        assert_eq!(t.p_stat(), 5);
        assert_eq!(t.m_stat(), 2);
        let single = ImmaculateTableau::new(vec![vec![1, 1, 1]]).unwrap();
        assert_eq!((single.p_stat(), single.m_stat()), (0, 0));
    }

    #[test]
    fn content_two_two_two() {
        let content = comp![2, 2, 2];
        let mut all = Vec::new();
        for shape in peak_compositions(6).unwrap() {
            all.extend(pct(&shape, &content).unwrap());
        }
        assert_eq!(all.len(), 13);
        let p: Vec<u32> = all.iter().map(|t| t.p_stat()).collect();
        assert_eq!(p, [0, 1, 1, 2, 1, 2, 2, 1, 3, 1, 2, 2, 2]);
        let m: Vec<u32> = all.iter().map(|t| t.m_stat()).collect();
        assert_eq!(m, [0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn weight_sums() {
        assert_eq!(pct_weight_sum(&comp![3], &comp![2, 1]).unwrap(), int(2));
        assert_eq!(pct_weight_sum(&comp![4, 2], &comp![2, 2, 2]).unwrap(), int(12));
    }

    #[test]
    fn lemma_exponent_bound() {
        for n in 1..=8 {
            for shape in peak_compositions(n).unwrap() {
                for content in crate::combinatorics::compositions(n).unwrap() {
                    for t in pct(&shape, &content).unwrap() {
                        let lhs = t.p_stat() as i64 - t.m_stat() as i64 + shape.len() as i64 - content.len() as i64;
                        assert!(lhs >= 0, "{shape} {content}\n{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn pct_are_immaculate_with_peak_prefixes() {
        for n in 1..=6 {
            for shape in peak_compositions(n).unwrap() {
                for content in crate::combinatorics::compositions(n).unwrap() {
                    let imm = immaculate_tableaux(&shape, &content).unwrap();
                    let expected: Vec<&ImmaculateTableau> = imm.iter().filter(|t| t.has_peak_prefixes()).collect();
                    let got = pct(&shape, &content).unwrap();
                    assert_eq!(got.iter().map(|t| &**t).collect::<Vec<_>>(), expected);
                    if !got.is_empty() {
                        assert!(content <= shape, "content {content} above shape {shape}");
                    }
                }
            }
        }
    }

    #[test]
    fn covers() {
        let up = |a: &Composition| -> Vec<Composition> { poset_covers(a).unwrap().into_iter().map(|e| e.upper).collect() };
        assert_eq!(up(&comp![2]), vec![comp![3], comp![2, 1]]);
        assert_eq!(up(&comp![2, 1]), vec![comp![3, 1], comp![2, 2]]);
        assert_eq!(up(&comp![1]), vec![comp![2]]);
        assert!(poset_covers(&comp![1, 2]).is_err());
        for e in poset_covers(&comp![2, 3]).unwrap() {
            assert!(subset_s(&e.lower, &e.upper, 1));
        }
        assert_eq!(standard_pct(&comp![2, 1]).unwrap(), 1);
    }

    #[test]
    fn standard_pct_counts_maximal_chains() {
        for n in 1..=7 {
            let chains = maximal_chain_counts(n).unwrap();
            for shape in peak_compositions(n).unwrap() {
                assert_eq!(standard_pct(&shape).unwrap() as u64, chains.get(&shape).copied().unwrap_or(0), "{shape}");
            }
        }
    }
}
