//! End-to-end pipeline: verify the defining relation, check the trace
//! requirement, conjugate into the frame where beta acts as z -> n z,
//! certify bounded non-fixing of infinity, sample free-product certificates
//! against exact evaluation, compute the ascent endomorphism, certify
//! strictness by folding, and emit a machine-checkable report.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::amalgam::{mu_power, FreeProductRep, PingPongVerdict};
use crate::cyclotomic::CycNum;
use crate::mat2::Mat2;
use crate::moebius::{
    diagonalize_hyperbolic, eval_word, normalize_to_sl, Representation,
};
use crate::ratfun::RatFun;
use crate::stallings::stallings_fold;
use crate::words::{
    format_rank6, format_two_gen, kernel_rank, magnus_rewrite, parse_two_gen, Character,
    KernelRank, Letter, ShiftRewriter, SubLetter, SubscriptedWord, Word,
};
use crate::CoreError;

/// The defining relator of the example group.
pub const DEFAULT_RELATOR: &str = "aabbaaBAbaBabAABBAbAAB";
/// The default HNN conjugating element beta = a^2.
pub const DEFAULT_BETA: &str = "aa";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub relator: String,
    pub beta: String,
    /// Exhaustive bound for the no-fix-infinity certificate; 0 skips it.
    pub length_bound: u32,
    pub samples: u32,
    pub max_syllables: u32,
    pub n_max: u32,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            relator: DEFAULT_RELATOR.into(),
            beta: DEFAULT_BETA.into(),
            length_bound: 5,
            samples: 1000,
            max_syllables: 10,
            n_max: 100,
            seed: 1,
        }
    }
}

/// beta satisfies the trace requirement: trace = sign * (sqrt(n) + 1/sqrt(n)).
#[derive(Clone, Debug, Serialize)]
pub struct RequirementResult {
    pub beta: String,
    pub n: u32,
    pub sign: i8,
    /// phi(beta) for the standard character (a -> 1, b -> 0); nonzero.
    pub phi: i64,
    pub trace: CycNum,
    pub trace_display: String,
}

pub fn verify_relation(relator: &Word) -> Result<bool, CoreError> {
    let img = eval_word(relator, &Representation::builtin())?;
    Ok(img.is_projective_identity())
}

pub fn verify_requirement(beta: &Word, n_max: u32) -> Result<RequirementResult, CoreError> {
    let phi = Character::new(vec![1, 0]).apply(beta);
    if phi == 0 {
        return Err(CoreError::RequirementNotMet(
            "beta lies in the kernel of the fibration character".into(),
        ));
    }
    let img = eval_word(beta, &Representation::builtin())?;
    if img.flip {
        return Err(CoreError::OrientationReversing);
    }
    let sl = normalize_to_sl(&img.mat)?;
    let trace = sl.trace();
    for n in 2..=n_max {
        let Some(s) = crate::moebius::field_sqrt(&CycNum::from_int(n as i64)) else {
            continue;
        };
        let cand = s.clone() + s.inv()?;
        let sign = if trace == cand {
            1
        } else if trace == -cand {
            -1
        } else {
            continue;
        };
        return Ok(RequirementResult {
            beta: format_two_gen(beta),
            n,
            sign,
            phi,
            trace_display: trace.to_string(),
            trace,
        });
    }
    Err(CoreError::RequirementNotMet(format!(
        "trace {} is not +-(sqrt(n) + 1/sqrt(n)) for any integer 2 <= n <= {}",
        trace, n_max
    )))
}

/// The conjugated frame: beta acts as z -> n z (D diagonal), the fiber
/// generators are SL2(Q(w)) constants, and mu = [[1, 1/t], [0, 1]] joins as
/// the free-product letter.
#[derive(Clone, Debug)]
pub struct ConjugatedSystem {
    pub requirement: RequirementResult,
    /// Conjugation by beta shifts subscripts by this (even, nonzero).
    pub shift: i64,
    pub conjugator: Mat2<CycNum>,
    pub d: Mat2<CycNum>,
    pub f_gens: Vec<Mat2<CycNum>>,
    pub rewriter: ShiftRewriter,
    /// Basis expression of a^{-shift} * beta (empty for a pure a-power).
    pub f_tail: SubscriptedWord,
}

impl ConjugatedSystem {
    pub fn f_rank(&self) -> usize {
        self.f_gens.len()
    }

    pub fn mu_index(&self) -> usize {
        self.f_gens.len()
    }
}

pub fn build_conjugated_system(
    relator: &Word,
    beta: &Word,
    n_max: u32,
) -> Result<ConjugatedSystem, CoreError> {
    let requirement = verify_requirement(beta, n_max)?;
    let shift = requirement.phi;
    if shift % 2 != 0 {
        // unreachable: odd phi makes beta orientation-reversing
        return Err(CoreError::OrientationReversing);
    }
    let sub_rel = magnus_rewrite(relator)?;
    let rewriter = ShiftRewriter::from_relation(&sub_rel)?;
    let (basis_min, basis_max) = rewriter.basis_range();

    let rep = Representation::builtin();
    let beta_sl = normalize_to_sl(&eval_word(beta, &rep)?.mat)?;
    let (conjugator, d) = diagonalize_hyperbolic(&beta_sl)?;

    let mut f_gens = Vec::new();
    for k in basis_min..=basis_max {
        // b_k = a^k b a^{-k}
        let word = Word::generator(0)
            .pow(k)
            .concat(&Word::generator(1))
            .concat(&Word::generator(0).pow(-k));
        let img = eval_word(&word, &rep)?;
        if img.flip {
            return Err(CoreError::ConsistencyFailure(
                "fiber generator image is orientation-reversing".into(),
            ));
        }
        let sl = normalize_to_sl(&img.mat)?;
        f_gens.push(sl.conjugate_by(&conjugator)?);
    }

    // beta = a^shift * f with f in the kernel; rewrite f on the basis
    let a_part = Word::generator(0).pow(-shift);
    let tail = a_part.concat(beta);
    let f_tail = if tail.is_empty() {
        SubscriptedWord::empty()
    } else {
        rewriter.shift(&magnus_rewrite(&tail)?, 0)
    };

    Ok(ConjugatedSystem {
        requirement,
        shift,
        conjugator,
        d,
        f_gens,
        rewriter,
        f_tail,
    })
}

/// Evaluate a word over the conjugated fiber basis (indices into `mats`).
fn eval_in_matrices(w: &Word, mats: &[Mat2<CycNum>]) -> Result<Mat2<CycNum>, CoreError> {
    let mut acc = Mat2::identity();
    for l in w.letters() {
        let m = mats
            .get(l.gen)
            .ok_or_else(|| CoreError::UnknownGenerator(format!("#{}", l.gen)))?;
        let m = if l.inv { m.inverse()? } else { m.clone() };
        acc = acc.mul(&m);
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub rewritten: String,
    pub rank: u32,
    pub basis: Vec<String>,
}

pub fn kernel_report(relator: &Word) -> Result<KernelReport, CoreError> {
    let sw = magnus_rewrite(relator)?;
    match kernel_rank(&sw)? {
        KernelRank::FreeOfRank { rank, basis_min, basis_max } => Ok(KernelReport {
            rewritten: sw.to_string(),
            rank,
            basis: (basis_min..=basis_max).map(|k| format!("b{}", k)).collect(),
        }),
        KernelRank::ExtremesRepeat { max, .. } => Err(CoreError::ExtremeRepeats(max)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NoFixReport {
    pub length_bound: u32,
    pub words_checked: u64,
    pub skipped: bool,
}

/// Exhaustively check that no nonempty freely reduced word in the conjugated
/// fiber generators, of length up to the bound, has lower-left entry zero
/// (i.e. fixes infinity). A counterexample would falsify the input facts.
pub fn certify_no_fix_infinity(
    sys: &ConjugatedSystem,
    length_bound: u32,
) -> Result<NoFixReport, CoreError> {
    if length_bound == 0 {
        return Ok(NoFixReport { length_bound, words_checked: 0, skipped: true });
    }
    let rank = sys.f_rank();
    let mut letters = Vec::with_capacity(2 * rank);
    for g in 0..rank {
        for inv in [false, true] {
            let m = if inv { sys.f_gens[g].inverse()? } else { sys.f_gens[g].clone() };
            letters.push((Letter::new(g, inv), m));
        }
    }
    let mut checked = 0u64;
    let mut stack: Vec<(usize, Mat2<CycNum>, Vec<Letter>)> = letters
        .iter()
        .enumerate()
        .map(|(i, (l, m))| (i, m.clone(), vec![*l]))
        .collect();
    while let Some((idx, prod, word)) = stack.pop() {
        checked += 1;
        if prod.c.is_zero() {
            let w = Word::from_letters(word.iter().copied());
            return Err(CoreError::CounterexampleFound(format!(
                "reduced fiber word {:?} fixes infinity (c = 0)",
                format_rank6(&w)
            )));
        }
        if word.len() as u32 >= length_bound {
            continue;
        }
        let last = letters[idx].0;
        for (j, (l, m)) in letters.iter().enumerate() {
            if l.gen == last.gen && l.inv != last.inv {
                continue; // would cancel
            }
            let mut next = word.clone();
            next.push(*l);
            stack.push((j, prod.mul(m), next));
        }
    }
    Ok(NoFixReport { length_bound, words_checked: checked, skipped: false })
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeProductReport {
    pub samples: u32,
    pub max_syllables: u32,
    pub seed: u64,
    pub nontrivial: u32,
    /// Certificates that landed in the edge group (never claimed trivial);
    /// reported separately and kept out of the positive count.
    pub inconclusive: u32,
}

/// Random reduced alternating words: each must receive a NonTrivial
/// ping-pong certificate, and exact evaluation in SL2(K) must independently
/// confirm non-identity. A disagreement aborts with the exit-3 contract.
pub fn certify_free_product(
    sys: &ConjugatedSystem,
    samples: u32,
    max_syllables: u32,
    seed: u64,
) -> Result<FreeProductReport, CoreError> {
    let rep = FreeProductRep::from_constants(&sys.f_gens);
    let mu = sys.mu_index();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nontrivial = 0u32;
    let mut inconclusive = 0u32;
    for _ in 0..samples {
        let word = random_alternating_word(&mut rng, sys.f_rank(), mu, max_syllables);
        let cert = crate::amalgam::ping_pong_certify(&word, &rep)?;
        let product = rep.eval(&word)?;
        let trivial_eval = product.is_plus_minus_identity();
        match (cert.verdict, trivial_eval) {
            (PingPongVerdict::NonTrivial, false) => nontrivial += 1,
            (PingPongVerdict::NonTrivial, true) => {
                return Err(CoreError::CertificationFailure(format!(
                    "word {:?}: ping-pong certificate says NonTrivial with syllable sides {:?}, \
                     but the exact product is +-identity: {:?}",
                    format_rank6(&word),
                    cert.syllables.iter().map(|s| s.side).collect::<Vec<_>>(),
                    product
                )));
            }
            (PingPongVerdict::Inconclusive, false) => inconclusive += 1,
            (PingPongVerdict::Inconclusive, true) => {
                return Err(CoreError::CertificationFailure(format!(
                    "word {:?}: exact product is +-identity for a nonempty reduced word",
                    format_rank6(&word)
                )));
            }
        }
    }
    Ok(FreeProductReport { samples, max_syllables, seed, nontrivial, inconclusive })
}

fn random_alternating_word(
    rng: &mut ChaCha8Rng,
    f_rank: usize,
    mu: usize,
    max_syllables: u32,
) -> Word {
    let n_syll = rng.gen_range(1..=max_syllables.max(1));
    let mut mu_turn = rng.gen_bool(0.5);
    let mut letters: Vec<Letter> = Vec::new();
    for _ in 0..n_syll {
        if mu_turn {
            let k: i64 = rng.gen_range(1..=5);
            let inv = rng.gen_bool(0.5);
            for _ in 0..k {
                letters.push(Letter::new(mu, inv));
            }
        } else {
            let len = rng.gen_range(1..=4);
            let mut last: Option<Letter> = None;
            for _ in 0..len {
                let l = loop {
                    let cand = Letter::new(rng.gen_range(0..f_rank), rng.gen_bool(0.5));
                    if let Some(prev) = last {
                        if prev.gen == cand.gen && prev.inv != cand.inv {
                            continue;
                        }
                    }
                    break cand;
                };
                letters.push(l);
                last = Some(l);
            }
        }
        mu_turn = !mu_turn;
    }
    let w = Word::from_letters(letters.iter().copied());
    debug_assert_eq!(w.len(), letters.len(), "construction is already reduced");
    w
}

/// The ascent endomorphism on the rank-(f_rank + 1) basis.
#[derive(Clone, Debug)]
pub struct Psi {
    /// Images of b_0..b_{r-1} and mu (last entry), as rank-6 words.
    pub images: Vec<Word>,
    pub n: u32,
}

/// psi(b_i) = conjugation by beta rewritten on the basis; psi(mu) = mu^n.
/// Every image is cross-checked exactly against matrix conjugation by D.
pub fn compute_psi(sys: &ConjugatedSystem) -> Result<Psi, CoreError> {
    let (basis_min, _) = sys.rewriter.basis_range();
    let mut images = Vec::with_capacity(sys.f_rank() + 1);
    let d_inv = sys.d.inverse()?;
    for i in 0..sys.f_rank() {
        let b_i = SubscriptedWord::from_letters([SubLetter::new(basis_min + i as i64, false)]);
        let conj = sys.f_tail.concat(&b_i).concat(&sys.f_tail.inverse());
        let shifted = sys.rewriter.shift(&conj, sys.shift);
        let image = shifted
            .shift_subscripts(-basis_min)
            .to_basis_word(sys.f_rank() - 1)
            .ok_or_else(|| {
                CoreError::ConsistencyFailure("psi image left the basis range".into())
            })?;
        // exact matrix identity D rho(b_i) D^-1 = rho(psi(b_i))
        let lhs = sys.d.mul(&sys.f_gens[i]).mul(&d_inv);
        let rhs = eval_in_matrices(&image, &sys.f_gens)?;
        if lhs != rhs {
            return Err(CoreError::ConsistencyFailure(format!(
                "D rho(b{}) D^-1 != rho(psi(b{})); word {:?}; lhs {:?}, rhs {:?}",
                i,
                i,
                format_rank6(&image),
                lhs,
                rhs
            )));
        }
        images.push(image);
    }
    let n = sys.requirement.n;
    // mu -> mu^n, checked over SL2(Q(w)(t)): D mu D^-1 = mu^n exactly
    let d_rf: Mat2<RatFun<CycNum>> = sys.d.map(|x| RatFun::constant(x.clone()));
    let lhs = d_rf.mul(&mu_power(1)).mul(&d_rf.inverse()?);
    let rhs = mu_power(n as i64);
    if lhs != rhs {
        return Err(CoreError::ConsistencyFailure(format!(
            "D mu D^-1 != mu^{}: got {:?}",
            n, lhs
        )));
    }
    images.push(Word::from_letters(vec![Letter::new(sys.mu_index(), false); n as usize]));
    Ok(Psi { images, n })
}

#[derive(Clone, Debug, Serialize)]
pub struct AscentReport {
    /// psi on the ordered basis (b_0..b_{r-1}, mu), token syntax.
    pub psi_images: Vec<String>,
    pub mu_in_image: bool,
    pub graph_vertices: usize,
}

/// Fold the psi-images and require that mu does not read in the resulting
/// subgroup graph (properness of the ascent) while every image does
/// (well-definedness).
pub fn certify_strict_ascent(
    sys: &ConjugatedSystem,
    psi: &Psi,
) -> Result<AscentReport, CoreError> {
    let rank = sys.f_rank() + 1;
    let graph = stallings_fold(&psi.images, rank);
    for (i, w) in psi.images.iter().enumerate() {
        if !graph.contains(w) {
            return Err(CoreError::ConsistencyFailure(format!(
                "psi image #{} does not read in its own folded graph",
                i
            )));
        }
    }
    let mu = Word::generator(sys.mu_index());
    if graph.contains(&mu) {
        return Err(CoreError::AscentNotStrict(
            "mu reads as a loop in the folded psi-image graph".into(),
        ));
    }
    Ok(AscentReport {
        psi_images: psi.images.iter().map(format_rank6).collect(),
        mu_in_image: false,
        graph_vertices: graph.vertex_count(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Certified,
    /// Every executed certificate is positive but some were skipped by config.
    Conditional,
    Failed,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub relator: String,
    pub projective_identity: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificationReport {
    pub schema_version: u32,
    pub config: PipelineConfig,
    pub relation: Option<RelationReport>,
    pub requirement: Option<RequirementResult>,
    pub kernel: Option<KernelReport>,
    pub no_fix_infinity: Option<NoFixReport>,
    pub free_product: Option<FreeProductReport>,
    pub ascent: Option<AscentReport>,
    pub failures: Vec<String>,
    pub verdict: Verdict,
}

/// Run the whole pipeline. Ordinary negative outcomes are recorded in the
/// report; `Err` is reserved for malformed input and for disagreements
/// between independent certification paths (the exit-3 contract).
pub fn full_report(config: &PipelineConfig) -> Result<CertificationReport, CoreError> {
    let mut report = CertificationReport {
        schema_version: 1,
        config: config.clone(),
        relation: None,
        requirement: None,
        kernel: None,
        no_fix_infinity: None,
        free_product: None,
        ascent: None,
        failures: Vec::new(),
        verdict: Verdict::Failed,
    };
    let relator = parse_two_gen(&config.relator)?;
    let beta = parse_two_gen(&config.beta)?;

    let relation_ok = verify_relation(&relator)?;
    report.relation = Some(RelationReport {
        relator: config.relator.clone(),
        projective_identity: relation_ok,
    });
    if !relation_ok {
        report.failures.push("relator does not evaluate to the projective identity".into());
        return Ok(report);
    }

    match kernel_report(&relator) {
        Ok(k) => report.kernel = Some(k),
        Err(e) => {
            report.failures.push(format!("kernel: {}", e));
            return Ok(report);
        }
    }

    let sys = match build_conjugated_system(&relator, &beta, config.n_max) {
        Ok(sys) => {
            report.requirement = Some(sys.requirement.clone());
            sys
        }
        Err(e @ (CoreError::ConsistencyFailure(_) | CoreError::CertificationFailure(_))) => {
            return Err(e);
        }
        Err(e) => {
            report.failures.push(format!("requirement: {}", e));
            return Ok(report);
        }
    };

    match certify_no_fix_infinity(&sys, config.length_bound) {
        Ok(r) => report.no_fix_infinity = Some(r),
        Err(e @ CoreError::CounterexampleFound(_)) => {
            report.failures.push(format!("no-fix-infinity: {}", e));
            return Ok(report);
        }
        Err(e) => return Err(e),
    }

    // a certification disagreement propagates as a hard error (exit-3 contract)
    let sampling = certify_free_product(&sys, config.samples, config.max_syllables, config.seed)?;
    report.free_product = Some(sampling);

    let psi = compute_psi(&sys)?; // consistency failures are hard errors
    match certify_strict_ascent(&sys, &psi) {
        Ok(r) => report.ascent = Some(r),
        Err(e @ CoreError::AscentNotStrict(_)) => {
            report.failures.push(format!("ascent: {}", e));
            return Ok(report);
        }
        Err(e) => return Err(e),
    }

    let skipped = report.no_fix_infinity.as_ref().is_some_and(|r| r.skipped);
    let unresolved = report.free_product.as_ref().is_some_and(|r| r.inconclusive > 0);
    report.verdict = if skipped || unresolved {
        Verdict::Conditional
    } else {
        Verdict::Certified
    };
    Ok(report)
}
