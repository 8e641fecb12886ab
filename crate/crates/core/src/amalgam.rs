//! The amalgam splitting of SL2 over the rational function field induced by
//! the valuation at t = 0, and ping-pong certificates of nontriviality for
//! alternating words in a constant subgroup F and the parabolic mu = [[1, 1/t], [0, 1]].
//!
//! With O the valuation ring, A = SL2(O), B = X A X^{-1} for X = diag(1/t, 1),
//! and C the members of A whose lower-left entry lies in tO, the group SL2(K)
//! splits as the amalgamated product A *_C B. A product of syllables alternating between
//! A - C and B - C is nontrivial by the normal-form theorem, which is what a
//! certificate records. Failure to alternate is reported as Inconclusive,
//! never as triviality.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::mat2::{Field, Mat2};
use crate::ratfun::{Poly, RatFun};
use crate::words::{Letter, Word};
use crate::CoreError;

/// Position of a matrix relative to the amalgam SL2(K) = A *_C B.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum AmalgamSide {
    /// A and B both (the edge group).
    C,
    AMinusC,
    BMinusC,
    Outside,
}

/// The parabolic mu^k = [[1, k/t], [0, 1]].
pub fn mu_power(k: i64) -> Mat2<RatFun<CycNum>> {
    Mat2::new(
        RatFun::one(),
        RatFun::constant(CycNum::from_int(k)) * RatFun::t_inv(),
        RatFun::zero(),
        RatFun::one(),
    )
}

/// Classify an SL2(K) matrix: C before A - C before B - C before Outside.
pub fn classify_amalgam<K: Field>(m: &Mat2<RatFun<K>>) -> Result<AmalgamSide, CoreError> {
    if m.det() != RatFun::one() {
        return Err(CoreError::NotUnimodular);
    }
    let in_a = m.a.in_valuation_ring()
        && m.b.in_valuation_ring()
        && m.c.in_valuation_ring()
        && m.d.in_valuation_ring();
    if in_a {
        if m.c.valuation().at_least(1) {
            return Ok(AmalgamSide::C);
        }
        return Ok(AmalgamSide::AMinusC);
    }
    // conjugate by X = diag(1/t, 1): in B iff [[a, t b], [c/t, d]] lands in A
    let in_b = m.a.in_valuation_ring()
        && m.d.in_valuation_ring()
        && m.b.valuation().at_least(-1)
        && m.c.valuation().at_least(1);
    if in_b {
        return Ok(AmalgamSide::BMinusC);
    }
    Ok(AmalgamSide::Outside)
}

/// Constant SL2 images for the free-group generators b_0..b_{r-1}; the
/// free-product letter mu is the next index (rank-6 convention: mu = 5).
#[derive(Clone, Debug)]
pub struct FreeProductRep<K> {
    f_images: Vec<Mat2<RatFun<K>>>,
}

impl<K: Field> FreeProductRep<K> {
    /// The images must be SL2 constants (entries in the base field).
    pub fn from_constants(consts: &[Mat2<K>]) -> Self {
        FreeProductRep {
            f_images: consts
                .iter()
                .map(|m| m.map(|x| RatFun::constant(x.clone())))
                .collect(),
        }
    }

    pub fn f_rank(&self) -> usize {
        self.f_images.len()
    }

    fn letter_image(&self, l: &Letter) -> Result<Mat2<RatFun<K>>, CoreError>
    where
        K: Field,
    {
        let base = if l.gen == self.f_images.len() {
            mu_power_generic(1)
        } else {
            self.f_images
                .get(l.gen)
                .cloned()
                .ok_or_else(|| CoreError::UnknownGenerator(format!("#{}", l.gen)))?
        };
        if l.inv {
            base.inverse()
        } else {
            Ok(base)
        }
    }

    /// Exact product matrix of a word in F and mu over SL2(K).
    pub fn eval(&self, w: &Word) -> Result<Mat2<RatFun<K>>, CoreError> {
        let mut acc = Mat2::identity();
        for l in w.letters() {
            acc = acc.mul(&self.letter_image(l)?);
        }
        Ok(acc)
    }
}

fn mu_power_generic<K: Field>(k: i64) -> Mat2<RatFun<K>> {
    let mut coeff = K::zero();
    let one = K::one();
    let (reps, sign) = (k.unsigned_abs(), k >= 0);
    for _ in 0..reps {
        coeff = if sign { coeff + one.clone() } else { coeff - one.clone() };
    }
    Mat2::new(
        RatFun::one(),
        RatFun::new(Poly::constant(coeff), Poly::t()).expect("t nonzero"),
        RatFun::zero(),
        RatFun::one(),
    )
}

/// One syllable of an alternating word, with its image and classification.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Syllable<K: Field + Serialize> {
    /// The rank-6 word fragment (token syntax).
    pub fragment: String,
    pub matrix: Mat2<RatFun<K>>,
    pub side: AmalgamSide,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum PingPongVerdict {
    NonTrivial,
    /// Some syllable landed in the edge group; the normal-form theorem does
    /// not apply. Never a claim of triviality.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PingPongCertificate<K: Field + Serialize> {
    pub syllables: Vec<Syllable<K>>,
    pub verdict: PingPongVerdict,
}

/// Split a reduced word over {b_0..b_{r-1}, mu} into maximal syllables and
/// classify each: NonTrivial iff F-syllables all land in A - C and mu-powers
/// in B - C, which alternate by construction.
pub fn ping_pong_certify<K: Field + Serialize>(
    w: &Word,
    rep: &FreeProductRep<K>,
) -> Result<PingPongCertificate<K>, CoreError> {
    if w.is_empty() {
        return Err(CoreError::MalformedSyllables("empty word".into()));
    }
    let mu = rep.f_rank();
    let mut runs: Vec<Vec<Letter>> = Vec::new();
    for &l in w.letters() {
        if l.gen > mu {
            return Err(CoreError::UnknownGenerator(format!("#{}", l.gen)));
        }
        match runs.last_mut() {
            Some(run) if (run[0].gen == mu) == (l.gen == mu) => run.push(l),
            _ => runs.push(vec![l]),
        }
    }
    let mut syllables = Vec::with_capacity(runs.len());
    let mut verdict = PingPongVerdict::NonTrivial;
    for run in runs {
        let frag = Word::from_letters(run.iter().copied());
        debug_assert_eq!(frag.len(), run.len(), "input word was reduced");
        let is_mu = run[0].gen == mu;
        let matrix = rep.eval(&frag)?;
        let side = classify_amalgam(&matrix)?;
        let expected = if is_mu { AmalgamSide::BMinusC } else { AmalgamSide::AMinusC };
        if side != expected {
            verdict = PingPongVerdict::Inconclusive;
        }
        syllables.push(Syllable { fragment: format_fragment(&frag, mu), matrix, side });
    }
    Ok(PingPongCertificate { syllables, verdict })
}

fn format_fragment(w: &Word, mu: usize) -> String {
    w.letters()
        .iter()
        .map(|l| match (l.gen == mu, l.inv) {
            (true, false) => "u".to_string(),
            (true, true) => "U".to_string(),
            (false, false) => format!("b{}", l.gen),
            (false, true) => format!("B{}", l.gen),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Entrywise exact evaluation at t = t0 in the base field.
pub fn specialize<K: Field>(
    m: &Mat2<RatFun<K>>,
    t0: &K,
) -> Result<Mat2<K>, CoreError> {
    if t0.is_zero() {
        return Err(CoreError::PoleAtSpecialization);
    }
    Ok(Mat2::new(
        m.a.eval_at(t0)?,
        m.b.eval_at(t0)?,
        m.c.eval_at(t0)?,
        m.d.eval_at(t0)?,
    ))
}

/// Floating-point specialization; carries no certification weight.
pub fn specialize_numeric(
    m: &Mat2<RatFun<CycNum>>,
    t0: Complex64,
) -> Option<[[Complex64; 2]; 2]> {
    let ev = |f: &RatFun<CycNum>| -> Option<Complex64> {
        let horner = |p: &Poly<CycNum>| {
            p.coeffs()
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, c| {
                    acc * t0 + c.embed().as_complex()
                })
        };
        let d = horner(f.den());
        if d.norm() < 1e-300 {
            return None;
        }
        Some(horner(f.num()) / d)
    };
    Some([[ev(&m.a)?, ev(&m.b)?], [ev(&m.c)?, ev(&m.d)?]])
}
