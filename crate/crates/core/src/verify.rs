//! Verification suites over the reference data and structural identities,
//! and the scanner for positivity of `M_n(Π, 𝔖̄)`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::combinatorics::{
    compositions, fibonacci, is_peak_composition, odd_compositions, peak_compositions, peak_sets, strict_partitions,
    Composition, IntVector,
};
use crate::commutative::{
    classical_pieri_check, eval_qsym, eval_sym, forget, schur_p_refinement_check, theta_sym,
};
use crate::error::{Error, Result};
use crate::golden;
use crate::linalg::{sparse_rank, Matrix};
use crate::nsqf::{
    expand_in_nsqf, key_relation, nsqf, nsqf_pfaffian, nsqf_raising, nsqf_recursive, pad_even, pieri, pieri_peak,
    q_to_nsqf, q_to_nsqf_chain, s_to_q, transition_matrix, MatrixPair,
};
use crate::nsym::{equals, euler_relation, is_zero_element, multiply, q_even_expansion, to_h, BasisTag, NSymElement, Terms};
use crate::peak::{pi_in_ribbons, theta};
use crate::qsym::{dual_bases_sides, pairing_pik, qsqf_bar_star, qsqf_star_f, qsqf_star_m, to_k, to_m, QBasis, QSymElement};
use crate::rational::{self, int, Rational};
use crate::tableaux::{immaculate_tableaux, maximal_chain_counts, pct, standard_pct, ImmaculateTableau};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Tables,
    Relations,
    Euler,
    Oracles,
    Pieri,
    Dual,
    Classical,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Tables, Suite::Relations, Suite::Euler, Suite::Oracles, Suite::Pieri, Suite::Dual, Suite::Classical];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::Relations => "relations",
            Suite::Euler => "euler",
            Suite::Oracles => "oracles",
            Suite::Pieri => "pieri",
            Suite::Dual => "dual",
            Suite::Classical => "classical",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Upper degree for the Euler relations.
    pub euler_max_n: u32,
    /// Seed for the random integer vectors of the oracle suite.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { euler_max_n: 12, seed: 0x5eed }
    }
}

type Outcome = std::result::Result<(), String>;

fn check(name: impl Into<String>, f: impl FnOnce() -> Result<Outcome>) -> Check {
    let (passed, detail) = match f() {
        Ok(Ok(())) => (true, None),
        Ok(Err(d)) => (false, Some(d)),
        Err(e) => (false, Some(format!("error: {e}"))),
    };
    Check { name: name.into(), passed, detail }
}

fn expect(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

/// First failing item of a sweep, if any.
fn sweep<T: fmt::Display>(items: impl IntoIterator<Item = T>, mut ok: impl FnMut(&T) -> Result<bool>) -> Result<Outcome> {
    let mut count = 0usize;
    for item in items {
        count += 1;
        if !ok(&item)? {
            return Ok(Err(format!("fails at {item} (after {} passing)", count - 1)));
        }
    }
    Ok(Ok(()))
}

fn int_terms(basis: BasisTag, terms: &[(i64, &[u32])]) -> NSymElement {
    NSymElement::from_int_terms(basis, terms)
}

fn matrix_diff(got: &Matrix, want: &Matrix) -> Outcome {
    if got.nrows() != want.nrows() || got.ncols() != want.ncols() {
        return Err(format!("size {}x{} vs {}x{}", got.nrows(), got.ncols(), want.nrows(), want.ncols()));
    }
    for i in 0..got.nrows() {
        for j in 0..got.ncols() {
            if got.get(i, j) != want.get(i, j) {
                return Err(format!(
                    "entry ({i},{j}): got {}, expected {}",
                    rational::format(got.get(i, j)),
                    rational::format(want.get(i, j))
                ));
            }
        }
    }
    Ok(())
}

fn tables() -> Vec<Check> {
    let mut out = Vec::new();
    for pair in [MatrixPair::QS, MatrixPair::QPi, MatrixPair::SbarPi, MatrixPair::PiSbar] {
        for n in 3..=6 {
            out.push(check(format!("M_{n}({pair}) matches reference"), || {
                let want = Matrix::from_i64(golden::matrix(n, pair).expect("reference table"));
                Ok(matrix_diff(&transition_matrix(n, pair)?.entries, &want))
            }));
        }
    }
    for n in 3..=6 {
        out.push(check(format!("M_{n}(Pi,Sbar) is the inverse of M_{n}(Sbar,Pi)"), || {
            let a = transition_matrix(n, MatrixPair::PiSbar)?;
            let b = transition_matrix(n, MatrixPair::SbarPi)?;
            Ok(matrix_diff(&a.entries.mul(&b.entries), &Matrix::identity(a.index.len())))
        }));
        out.push(check(format!("M_{n}(SbarStar,K) is the transpose of M_{n}(Pi,Sbar)"), || {
            let a = transition_matrix(n, MatrixPair::SbarStarK)?;
            let b = transition_matrix(n, MatrixPair::PiSbar)?;
            Ok(matrix_diff(&a.entries, &b.entries.transpose()))
        }));
    }
    out.push(check("M_n(Q,S) is upper unitriangular for n <= 8", || {
        sweep(1..=8u32, |&n| Ok(transition_matrix(n, MatrixPair::QS)?.entries.is_unitriangular()))
    }));
    out.push(check("Q_222 expansion over S", || {
        let want = int_terms(BasisTag::S, golden::Q222_IN_S);
        let got = q_to_nsqf(&Composition::new(vec![2, 2, 2])?)?;
        Ok(expect(got == want, || format!("got {got}")))
    }));
    out.extend(tableau_checks());
    out
}

fn tableau_checks() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("PCT((3,4,2),(2,2,1,4)) has the four reference tableaux", || {
        let got: Vec<Vec<Vec<u32>>> =
            pct(&Composition::new(vec![3, 4, 2])?, &Composition::new(vec![2, 2, 1, 4])?)?
                .iter()
                .map(|t| t.rows().to_vec())
                .collect();
        let want: Vec<Vec<Vec<u32>>> =
            golden::PCT_342_2214.iter().map(|t| t.iter().map(|r| r.to_vec()).collect()).collect();
        Ok(expect(got == want, || format!("got {got:?}")))
    }));
    out.push(check("tableau of shape (3,4,2,3,1) has p = 5, m = 2", || {
        let t = ImmaculateTableau::new(golden::STATISTICS_TABLEAU.iter().map(|r| r.to_vec()).collect())?;
        Ok(expect((t.p_stat(), t.m_stat()) == (5, 2), || format!("p = {}, m = {}", t.p_stat(), t.m_stat())))
    }));
    out.push(check("13 PCT of content (2,2,2) with reference p and m", || {
        let content = Composition::new(vec![2, 2, 2])?;
        let mut all = Vec::new();
        for shape in peak_compositions(6)? {
            all.extend(pct(&shape, &content)?);
        }
        let p: Vec<u32> = all.iter().map(|t| t.p_stat()).collect();
        let m: Vec<u32> = all.iter().map(|t| t.m_stat()).collect();
        Ok(expect(p == golden::CONTENT_222_P && m == golden::CONTENT_222_M, || format!("p = {p:?}, m = {m:?}")))
    }));
    out.push(check("p - m + l(shape) - l(content) >= 0 on every PCT of size <= 8", || {
        for n in 1..=8 {
            for shape in peak_compositions(n)? {
                for content in compositions(n)? {
                    for t in pct(&shape, &content)? {
                        let e = t.p_stat() as i64 - t.m_stat() as i64 + shape.len() as i64 - content.len() as i64;
                        if e < 0 {
                            return Ok(Err(format!("shape {shape}, rows {:?}", t.rows())));
                        }
                    }
                }
            }
        }
        Ok(Ok(()))
    }));
    out.push(check("PCT are the immaculate tableaux with peak prefixes, vanishing unless content <=lex shape (n <= 6)", || {
        for n in 1..=6 {
            for shape in peak_compositions(n)? {
                for content in compositions(n)? {
                    let imm = immaculate_tableaux(&shape, &content)?;
                    let filtered: Vec<&ImmaculateTableau> = imm.iter().filter(|t| t.has_peak_prefixes()).collect();
                    let got = pct(&shape, &content)?;
                    if got.iter().map(|t| &**t).collect::<Vec<_>>() != filtered {
                        return Ok(Err(format!("shape {shape}, content {content}")));
                    }
                    if !got.is_empty() && content > shape {
                        return Ok(Err(format!("nonzero for content {content} > shape {shape}")));
                    }
                }
            }
        }
        Ok(Ok(()))
    }));
    out.push(check("standard PCT count maximal chains of the peak composition poset (n <= 7)", || {
        for n in 1..=7 {
            let chains = maximal_chain_counts(n)?;
            for shape in peak_compositions(n)? {
                let a = standard_pct(&shape)? as u64;
                let b = chains.get(&shape).copied().unwrap_or(0);
                if a != b {
                    return Ok(Err(format!("{shape}: {a} tableaux, {b} chains")));
                }
            }
        }
        Ok(Ok(()))
    }));
    out
}

fn relation_vector(rel: golden::Relation) -> Terms {
    let mut t = Terms::new();
    for (c, k) in rel {
        t.insert(Composition::new(k.to_vec()).expect("reference index"), int(*c));
    }
    t
}

fn relations() -> Vec<Check> {
    let mut out = Vec::new();
    for n in 2..=6 {
        let rels = golden::relations(n);
        out.push(check(format!("all {} reference relations of degree {n} vanish", rels.len()), || {
            sweep(rels.iter().map(|r| int_terms(BasisTag::S, r)), |r| is_zero_element(&s_to_q(r)?))
        }));
        out.push(check(format!("degree-{n} relations and peak basis span all S_alpha"), || {
            let mut vectors: Vec<Terms> = rels.iter().map(|r| relation_vector(r)).collect();
            let independent = sparse_rank(&vectors) == rels.len();
            let basis = peak_compositions(n)?;
            vectors.extend(basis.iter().map(|b| [(b.clone(), Rational::one())].into()));
            let total = compositions(n)?.len();
            Ok(expect(independent && sparse_rank(&vectors) == total, || {
                format!("relations independent: {independent}, {} relations + {} basis vs {total}", rels.len(), basis.len())
            }))
        }));
        out.push(check(format!("peak-indexed S_beta of degree {n} are independent"), || {
            let rows = peak_compositions(n)?
                .iter()
                .map(|b| Ok(to_h(&nsqf_recursive(b)?)?.into_terms()))
                .collect::<Result<Vec<_>>>()?;
            Ok(expect(sparse_rank(&rows) == rows.len(), || "rank deficient".into()))
        }));
    }
    out.push(check("key relations vanish for |alpha| <= 4, n <= 6", || {
        let mut cases = Vec::new();
        for m in 0..=4 {
            let alphas = if m == 0 { vec![Composition::empty()] } else { compositions(m)? };
            for a in alphas {
                for n in 2..=6 {
                    cases.push((a.clone(), n));
                }
            }
        }
        sweep(cases.into_iter().map(|(a, n)| KeyCase(a, n)), |KeyCase(a, n)| {
            let rel = s_to_q(&key_relation(a, *n)?)?;
            Ok(crate::peak::to_pi(&rel)?.is_zero())
        })
    }));
    out
}

struct KeyCase(Composition, u32);

impl fmt::Display for KeyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha = ({}), n = {}", self.0, self.1)
    }
}

fn euler(max_n: u32) -> Vec<Check> {
    let rank_max = max_n.min(10);
    vec![
        check(format!("Euler relations hold for n <= {max_n}"), || {
            sweep(1..=max_n, |&n| is_zero_element(&euler_relation(n)))
        }),
        check(format!("Catalan expansion equals Q_n for even n <= {rank_max}"), || {
            sweep((2..=rank_max).step_by(2), |&n| {
                equals(&q_even_expansion(n)?, &NSymElement::basis_element(BasisTag::Q, Composition::new(vec![n])?))
            })
        }),
        check(format!("odd Q words have rank f_(n-1) for n <= {rank_max}"), || {
            sweep(1..=rank_max, |&n| {
                let rows: Vec<Terms> = odd_compositions(n)?.iter().map(crate::nsym::q_word_in_h).collect();
                Ok(sparse_rank(&rows) as u64 == fibonacci(n - 1))
            })
        }),
        check(format!("Pi_P have rank f_(n-1) for n <= {rank_max}"), || {
            sweep(1..=rank_max, |&n| {
                let rows = peak_sets(n)?.iter().map(|p| Ok(to_h(&pi_in_ribbons(p))?.into_terms())).collect::<Result<Vec<_>>>()?;
                Ok(sparse_rank(&rows) as u64 == fibonacci(n - 1))
            })
        }),
        check(format!("peak-indexed S_beta have rank f_(n-1) for n <= {rank_max}"), || {
            sweep(1..=rank_max, |&n| {
                let rows = peak_compositions(n)?
                    .iter()
                    .map(|b| Ok(to_h(&nsqf_recursive(b)?)?.into_terms()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(sparse_rank(&rows) as u64 == fibonacci(n - 1))
            })
        }),
    ]
}

struct Vector(IntVector);

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.entries())
    }
}

fn oracle_agreement(v: &IntVector) -> Result<bool> {
    let reference = to_h(&nsqf(v))?;
    if to_h(&nsqf_pfaffian(&pad_even(v))?)? != reference || to_h(&nsqf_raising(v))? != reference {
        return Ok(false);
    }
    if v.entries().iter().all(|&x| x > 0) {
        let c = Composition::new(v.entries().iter().map(|&x| x as u32).collect())?;
        return Ok(to_h(&nsqf_recursive(&c)?)? == reference);
    }
    Ok(true)
}

/// Fifty vectors with entries in `[-2, 4]` and length at most 4.
pub fn random_vectors(seed: u64) -> Vec<IntVector> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..50)
        .map(|_| {
            let len = rng.gen_range(0..=4);
            IntVector((0..len).map(|_| rng.gen_range(-2..=4)).collect())
        })
        .collect()
}

fn oracles(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=7 {
        out.push(check(format!("four expansions of S_alpha agree for all alpha of {n}"), || {
            sweep(compositions(n)?.into_iter().map(|c| Vector(IntVector::from(&c))), |v| oracle_agreement(&v.0))
        }));
    }
    out.push(check("four expansions agree on 50 random integer vectors", || {
        sweep(random_vectors(seed).into_iter().map(Vector), |v| oracle_agreement(&v.0))
    }));
    out
}

struct PieriCase(Composition, u32);

impl fmt::Display for PieriCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha = {}, s = {}", self.0, self.1)
    }
}

fn pieri_cases(peak_only: bool) -> Result<Vec<PieriCase>> {
    let mut cases = Vec::new();
    for m in 1..=5 {
        for a in compositions(m)? {
            if peak_only && !is_peak_composition(&a) {
                continue;
            }
            for s in 1..=3 {
                cases.push(PieriCase(a.clone(), s));
            }
        }
    }
    Ok(cases)
}

fn pieri_suite() -> Vec<Check> {
    vec![
        check("S_alpha Q_s equals the right Pieri expansion (|alpha| <= 5, s <= 3)", || {
            sweep(pieri_cases(false)?, |PieriCase(a, s)| {
                let q_s = NSymElement::basis_element(BasisTag::Q, Composition::new(vec![*s])?);
                let lhs = multiply(&nsqf(&IntVector::from(a)), &q_s)?;
                let mut rhs = NSymElement::zero(BasisTag::Q);
                for (b, c) in pieri(a, *s)?.terms() {
                    rhs.add_assign_scaled(&nsqf(&IntVector::from(b)), c)?;
                }
                equals(&lhs, &rhs)
            })
        }),
        check("peak Pieri rule matches the straightened product (|alpha| <= 5, s <= 3)", || {
            sweep(pieri_cases(true)?, |PieriCase(a, s)| {
                let q_s = NSymElement::basis_element(BasisTag::Q, Composition::new(vec![*s])?);
                let lhs = multiply(&nsqf_recursive(a)?, &q_s)?;
                Ok(expand_in_nsqf(&lhs, a.size() + s)? == pieri_peak(a, *s)?)
            })
        }),
        check("tableau and chain expansions of Q_alpha agree (n <= 7)", || {
            let all: Vec<Composition> = (1..=7).map(compositions).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
            sweep(all, |a| Ok(q_to_nsqf(a)? == q_to_nsqf_chain(a)?))
        }),
    ]
}

fn display_match(got: &QSymElement, want: golden::Relation) -> Outcome {
    let want: Terms = relation_vector(want);
    expect(got.terms() == &want, || {
        let missing: Vec<String> = want.keys().filter(|k| got.coeff(k) != want[*k]).map(|k| k.to_string()).collect();
        format!("{} terms vs {}; differing at {missing:?}", got.len(), want.len())
    })
}

fn dual() -> Vec<Check> {
    vec![
        check("S*_321 over M matches the reference display", || {
            Ok(display_match(&qsqf_star_m(&Composition::new(vec![3, 2, 1])?)?, golden::SSTAR_321_M))
        }),
        check("S*_321 over F matches the reference display", || {
            Ok(display_match(&qsqf_star_f(&Composition::new(vec![3, 2, 1])?)?, golden::SSTAR_321_F))
        }),
        check("F- and M-expansions of S*_alpha agree (n <= 7)", || {
            let all: Vec<Composition> =
                (1..=7).map(peak_compositions).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
            sweep(all, |a| {
                let f = QSymElement::from_terms(QBasis::F, qsqf_star_f(a)?.terms().clone())?;
                Ok(to_m(&f)? == qsqf_star_m(a)?)
            })
        }),
        check("S*_alpha has nonnegative integer M-coefficients (n <= 8)", || {
            let all: Vec<Composition> =
                (1..=8).map(peak_compositions).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
            sweep(all, |a| Ok(qsqf_star_m(a)?.terms().values().all(rational::is_nonnegative_integer)))
        }),
        check("sum M_alpha (x) Q_alpha = sum K_P (x) Pi_P (n <= 6)", || {
            sweep(1..=6u32, |&n| {
                let (l, r) = dual_bases_sides(n)?;
                Ok(l == r)
            })
        }),
        check("Sbar*_alpha over K is the transpose of M_n(Pi,Sbar) (n <= 8)", || {
            sweep(1..=8u32, |&n| {
                let t = transition_matrix(n, MatrixPair::PiSbar)?;
                for (i, a) in t.index.iter().enumerate() {
                    let k = to_k(&qsqf_bar_star(a)?, n)?;
                    for (j, b) in t.index.iter().enumerate() {
                        if k.coeff(b) != *t.entries.get(j, i) {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            })
        }),
        check("[S_beta, S*_alpha] = delta (n <= 6)", || {
            sweep(1..=6u32, |&n| {
                let index = peak_compositions(n)?;
                let stars =
                    index.iter().map(|a| to_k(&qsqf_star_m(a)?, n)).collect::<Result<Vec<_>>>()?;
                for beta in &index {
                    let pi = crate::peak::to_pi(&nsqf_recursive(beta)?)?;
                    for (alpha, star) in index.iter().zip(&stars) {
                        let want = if alpha == beta { Rational::one() } else { Rational::zero() };
                        if pairing_pik(&pi, star)? != want {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            })
        }),
    ]
}

fn classical() -> Vec<Check> {
    vec![
        check("pi(S_alpha) + pi(S_alpha with two parts swapped) = 0 (n <= 6)", || {
            let all: Vec<Composition> = (1..=6).map(compositions).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
            sweep(all, |a| {
                let n = a.size() as usize;
                let base = forget(&nsqf(&IntVector::from(a)))?;
                let p = a.parts();
                for i in 0..p.len() {
                    for j in i + 1..p.len() {
                        if p[i] == p[j] {
                            continue;
                        }
                        let mut w: Vec<i64> = p.iter().map(|&x| x as i64).collect();
                        w.swap(i, j);
                        let sum = base.add(&forget(&nsqf(&IntVector(w)))?)?;
                        if !eval_sym(&sum, n)?.is_zero() {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            })
        }),
        check("classical Pieri rule for Schur Q-functions (|mu| <= 5, s <= 3)", || {
            let mut cases = Vec::new();
            for size in 1..=5 {
                for mu in strict_partitions(size) {
                    for s in 1..=3 {
                        cases.push(PartitionCase(mu.clone(), s));
                    }
                }
            }
            sweep(cases, |PartitionCase(mu, s)| classical_pieri_check(mu, *s))
        }),
        check("Schur P-functions refine into signed S*_alpha (|lambda| <= 7)", || {
            let all: Vec<_> = (1..=7).flat_map(strict_partitions).collect();
            sweep(all, |l| schur_p_refinement_check(l, l.size() as usize))
        }),
        check("theta commutes with the forgetful map (degree <= 6)", || {
            let all: Vec<Composition> = (1..=6).map(compositions).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
            sweep(all, |a| {
                let h = NSymElement::basis_element(BasisTag::H, a.clone());
                Ok(theta_sym(&forget(&h)?)? == forget(&theta(&h)?)?)
            })
        }),
        check("monomial evaluation separates M_alpha (n <= 6)", || {
            sweep(1..=6u32, |&n| {
                let rows = compositions(n)?
                    .into_iter()
                    .map(|c| Ok(eval_qsym(&QSymElement::basis_element(QBasis::M, c)?, n as usize)?.terms().clone()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(sparse_rank(&rows) == rows.len())
            })
        }),
    ]
}

struct PartitionCase(crate::combinatorics::Partition, u32);

impl fmt::Display for PartitionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu = {}, s = {}", self.0, self.1)
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    let checks = match suite {
        Suite::Tables => tables(),
        Suite::Relations => relations(),
        Suite::Euler => euler(opts.euler_max_n),
        Suite::Oracles => oracles(opts.seed),
        Suite::Pieri => pieri_suite(),
        Suite::Dual => dual(),
        Suite::Classical => classical(),
    };
    SuiteReport { suite: suite.name().to_string(), checks }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub property: String,
    pub row: Vec<u32>,
    pub col: Vec<u32>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeScan {
    pub n: u32,
    pub size: usize,
    pub nonnegative: bool,
    pub integral: bool,
    pub unitriangular: bool,
    /// Agreement with the reference tables where they exist.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_reference: Option<bool>,
    pub witnesses: Vec<Witness>,
}

impl DegreeScan {
    pub fn verified(&self) -> bool {
        self.nonnegative && self.integral && self.unitriangular && self.matches_reference != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub max_n: u32,
    pub verified: bool,
    pub degrees: Vec<DegreeScan>,
}

/// Inspects `M_n(Π, 𝔖̄)` for nonnegativity, integrality and unitriangularity.
pub fn scan_degree(n: u32) -> Result<DegreeScan> {
    let m = transition_matrix(n, MatrixPair::PiSbar)?;
    let mut witnesses = Vec::new();
    let mut note = |property: &str, i: usize, j: usize, v: &Rational| {
        witnesses.push(Witness {
            property: property.to_string(),
            row: m.index[i].parts().to_vec(),
            col: m.index[j].parts().to_vec(),
            value: rational::format(v),
        })
    };
    let (mut nonnegative, mut integral, mut unitriangular) = (true, true, true);
    for i in 0..m.index.len() {
        for j in 0..m.index.len() {
            let v = m.entries.get(i, j);
            if v.is_negative() {
                nonnegative = false;
                note("nonnegative", i, j, v);
            }
            if !v.is_integer() {
                integral = false;
                note("integral", i, j, v);
            }
            let expected_zero = j < i;
            if (i == j && !v.is_one()) || (expected_zero && !v.is_zero()) {
                unitriangular = false;
                note("unitriangular", i, j, v);
            }
        }
    }
    let matches_reference =
        golden::matrix(n, MatrixPair::PiSbar).map(|t| matrix_diff(&m.entries, &Matrix::from_i64(t)).is_ok());
    Ok(DegreeScan { n, size: m.index.len(), nonnegative, integral, unitriangular, matches_reference, witnesses })
}

pub fn assemble_scan(max_n: u32, degrees: Vec<DegreeScan>) -> ScanReport {
    let verified = degrees.iter().all(DegreeScan::verified);
    ScanReport { max_n, verified, degrees }
}

/// Scans every degree `1..=max_n`; `max_n` must be at least 3.
pub fn scan_conjecture(max_n: u32) -> Result<ScanReport> {
    check_scan_bound(max_n)?;
    let degrees = (1..=max_n).map(scan_degree).collect::<Result<Vec<_>>>()?;
    Ok(assemble_scan(max_n, degrees))
}

pub fn check_scan_bound(max_n: u32) -> Result<()> {
    if max_n < 3 {
        return Err(Error::InvalidInput(format!("scan needs max_n >= 3, got {max_n}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn random_vectors_are_reproducible() {
        let a = random_vectors(7);
        assert_eq!(a, random_vectors(7));
        assert_eq!(a.len(), 50);
        assert!(a.iter().all(|v| v.len() <= 4 && v.entries().iter().all(|x| (-2..=4).contains(x))));
    }

    #[test]
    fn failing_checks_carry_details() {
        let c = check("x", || Ok(Err("bad".into())));
        assert!(!c.passed);
        assert_eq!(c.detail.as_deref(), Some("bad"));
        let e = check("y", || Err(Error::Internal("boom".into())));
        assert!(e.detail.unwrap().contains("boom"));
    }

    #[test]
    fn scan_small() {
        assert!(scan_conjecture(2).is_err());
        let r = scan_conjecture(5).unwrap();
        assert!(r.verified);
        assert_eq!(r.degrees.len(), 5);
        assert_eq!(r.degrees[4].matches_reference, Some(true));
    }
}
