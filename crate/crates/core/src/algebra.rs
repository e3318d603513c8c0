//! PBW rewriting engine and products for the free algebra T(V), the
//! distinguished pre-Nichols algebra, the Nichols algebra `B_q` of Cartan
//! type A2 and its cleft objects `E_lambda`.
//!
//! Normal forms are linear combinations of ordered monomials
//! `y2^n2 y12^n12 y1^n1`; the composite letter `y12` is introduced only by
//! the rewrite rule for `y1 y2`.

use num::BigRational;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linear::LinComb;
use crate::scalar::{q_binom, q_factorial, q_int, Cyclotomic};
use crate::{Error, Result};

/// Generator indices for free-algebra words: `1 = x1`, `2 = x2`.
pub const X1: u8 = 1;
pub const X2: u8 = 2;
pub type GenWord = Vec<u8>;

/// Elements of T(V): finite-support combinations of generator words.
pub type FreeElement = LinComb<GenWord>;

/// Internal rewriting alphabet, ordered by the PBW order `y2 < y12 < y1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Y2 = 0,
    Y12 = 1,
    Y1 = 2,
}

/// Exponent triple indexing the PBW monomial `x2^n2 x12^n12 x1^n1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub n2: u8,
    pub n12: u8,
    pub n1: u8,
}

impl Mono {
    pub const UNIT: Mono = Mono { n2: 0, n12: 0, n1: 0 };

    pub fn new(n2: u8, n12: u8, n1: u8) -> Self {
        Mono { n2, n12, n1 }
    }

    pub fn is_unit(&self) -> bool {
        *self == Self::UNIT
    }

    pub fn degree(&self) -> u32 {
        self.n2 as u32 + 2 * self.n12 as u32 + self.n1 as u32
    }

    /// Letter-count multidegree `(#x1, #x2)` in `Z^2`; `x12` counts as (1,1).
    pub fn multidegree(&self) -> (u32, u32) {
        (self.n12 as u32 + self.n1 as u32, self.n2 as u32 + self.n12 as u32)
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut w = Vec::with_capacity(self.n2 as usize + self.n12 as usize + self.n1 as usize);
        w.extend(std::iter::repeat(Letter::Y2).take(self.n2 as usize));
        w.extend(std::iter::repeat(Letter::Y12).take(self.n12 as usize));
        w.extend(std::iter::repeat(Letter::Y1).take(self.n1 as usize));
        w
    }
}

impl Serialize for Mono {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.n2, self.n12, self.n1].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mono {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [n2, n12, n1] = <[u8; 3]>::deserialize(deserializer)?;
        Ok(Mono::new(n2, n12, n1))
    }
}

impl std::fmt::Display for Mono {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (name, e) in [("x2", self.n2), ("x12", self.n12), ("x1", self.n1)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

pub fn multidegree_word(w: &[u8]) -> (u32, u32) {
    let d1 = w.iter().filter(|&&g| g == X1).count() as u32;
    let d2 = w.iter().filter(|&&g| g == X2).count() as u32;
    (d1, d2)
}

/// Algebra context tags. The deformation parameters for the cleft context
/// live on the [`Model`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ctx {
    PreNichols,
    Nichols,
    Cleft,
}

impl Ctx {
    pub fn name(&self) -> &'static str {
        match self {
            Ctx::PreNichols => "pre-Nichols",
            Ctx::Nichols => "Nichols",
            Ctx::Cleft => "cleft",
        }
    }
}

/// Finite-support combination of PBW monomials in a basis-indexed context.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    pub ctx: Ctx,
    pub terms: LinComb<Mono>,
}

impl AlgebraElement {
    pub fn zero(ctx: Ctx) -> Self {
        AlgebraElement { ctx, terms: LinComb::zero() }
    }

    pub fn monomial(ctx: Ctx, m: Mono, coeff: Cyclotomic) -> Self {
        AlgebraElement { ctx, terms: LinComb::term(m, coeff) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(self.ctx.name(), other.ctx.name()));
        }
        Ok(AlgebraElement { ctx: self.ctx, terms: self.terms.add(&other.terms) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&AlgebraElement { ctx: other.ctx, terms: other.terms.neg() })
    }

    pub fn scale(&self, s: &Cyclotomic) -> Self {
        AlgebraElement { ctx: self.ctx, terms: self.terms.scale(s) }
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            monomial: Mono,
            coeff: &'a Cyclotomic,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in self.terms.iter() {
            seq.serialize_element(&Term { monomial: *m, coeff: c })?;
        }
        seq.end()
    }
}

/// Braiding data of type A2: `q11 = q22 = q`, `q12 q21 = q^{-1}`,
/// with `q` a primitive `N`-th root of unity.
#[derive(Clone, Debug, PartialEq)]
pub struct BraidingMatrix {
    pub n: u32,
    pub q: Cyclotomic,
    pub q12: Cyclotomic,
    pub q21: Cyclotomic,
}

impl BraidingMatrix {
    pub fn new(n: u32, q: Cyclotomic, q12: Cyclotomic) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("N must be at least 3, got {n}")));
        }
        if !q.pow(n as i64)?.is_one() {
            return Err(Error::InvalidParams("q^N is not 1".into()));
        }
        for m in 1..n {
            if q.pow(m as i64)?.is_one() {
                return Err(Error::InvalidParams(format!("q is not primitive: q^{m} = 1")));
            }
        }
        if q12.is_zero() {
            return Err(Error::InvalidParams("q12 must be nonzero".into()));
        }
        let q21 = q.mul(&q12).inv()?;
        Ok(BraidingMatrix { n, q, q12, q21 })
    }

    /// Builds the matrix from exponents of `zeta_N`.
    pub fn from_exponents(n: u32, q_exp: i64, q12_exp: i64) -> Result<Self> {
        Self::new(n, Cyclotomic::root(n, q_exp), Cyclotomic::root(n, q12_exp))
    }

    /// Diagonal braiding scalar between multidegrees: the factor picked up
    /// when an element of multidegree `d` passes one of multidegree `e`.
    pub fn braid(&self, d: (u32, u32), e: (u32, u32)) -> Cyclotomic {
        // q_{ij}^{d_i e_j} with q11 = q22 = q
        let qq = self.q.pow((d.0 * e.0 + d.1 * e.1) as i64).unwrap();
        let a = self.q12.pow((d.0 * e.1) as i64).unwrap();
        let b = self.q21.pow((d.1 * e.0) as i64).unwrap();
        qq.mul(&a).mul(&b)
    }

    pub fn field_order(&self) -> u32 {
        let a = self.q.order() as u64;
        let b = self.q12.order() as u64;
        num::Integer::lcm(&a, &b) as u32
    }
}

/// Deformation parameters of a cleft object `E_lambda`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeformationParams {
    pub l1: Cyclotomic,
    pub l2: Cyclotomic,
    pub l12: Cyclotomic,
    pub l112: Cyclotomic,
    pub l122: Cyclotomic,
}

impl DeformationParams {
    pub fn zero(order: u32) -> Self {
        let z = Cyclotomic::zero(order);
        DeformationParams { l1: z.clone(), l2: z.clone(), l12: z.clone(), l112: z.clone(), l122: z }
    }

    pub fn from_rationals(order: u32, v: [BigRational; 5]) -> Self {
        let [a, b, c, d, e] = v;
        DeformationParams {
            l1: Cyclotomic::from_rational(order, a),
            l2: Cyclotomic::from_rational(order, b),
            l12: Cyclotomic::from_rational(order, c),
            l112: Cyclotomic::from_rational(order, d),
            l122: Cyclotomic::from_rational(order, e),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.l1.is_zero() && self.l2.is_zero() && self.l12.is_zero() && self.l112.is_zero() && self.l122.is_zero()
    }
}

/// Permissibility flags of the realization: each flag reports whether the
/// corresponding character condition holds, gating which lambda entries may
/// be nonzero.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealizationConstraints {
    pub chi1_n_trivial: bool,
    pub chi2_n_trivial: bool,
    pub chi1chi2_n_trivial: bool,
    pub chi1sq_chi2_trivial: bool,
    pub chi1_chi2sq_trivial: bool,
    pub weight_modulus: u32,
}

impl RealizationConstraints {
    pub fn all_permitted(n: u32) -> Self {
        RealizationConstraints {
            chi1_n_trivial: true,
            chi2_n_trivial: true,
            chi1chi2_n_trivial: true,
            chi1sq_chi2_trivial: true,
            chi1_chi2sq_trivial: true,
            weight_modulus: n,
        }
    }
}

/// Generic liftings keep the quantum Serre relations; atypical liftings
/// deform them, which forces `N = 3` and `q12 = q21 = q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    Generic,
    Atypical,
}

/// Redex selection order for the rewriting engine. `Leftmost` is the
/// default; the others exist to property-test confluence.
#[derive(Clone, Copy, Debug)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
    Seeded(u64),
}

/// A fixed braiding, case and deformation vector. All computations of the
/// crate are methods on this type.
#[derive(Clone, Debug)]
pub struct Model {
    pub braiding: BraidingMatrix,
    pub case: Case,
    pub lambda: DeformationParams,
    pub constraints: RealizationConstraints,
}

impl Model {
    pub fn new(
        braiding: BraidingMatrix,
        case: Case,
        lambda: DeformationParams,
        constraints: RealizationConstraints,
    ) -> Result<Self> {
        match case {
            Case::Atypical => {
                if braiding.n != 3 {
                    return Err(Error::InvalidParams("atypical case requires N = 3".into()));
                }
                if braiding.q12 != braiding.q || braiding.q21 != braiding.q {
                    return Err(Error::InvalidParams("atypical case requires q12 = q21 = q".into()));
                }
            }
            Case::Generic => {
                if !lambda.l112.is_zero() || !lambda.l122.is_zero() {
                    return Err(Error::InvalidParams(
                        "generic case requires lambda112 = lambda122 = 0".into(),
                    ));
                }
            }
        }
        // quantum Serre deformations are only permitted for N = 3, q12 = q21
        if (braiding.n > 3 || braiding.q12 != braiding.q21)
            && (!lambda.l112.is_zero() || !lambda.l122.is_zero())
        {
            return Err(Error::InvalidParams(
                "lambda112 = lambda122 = 0 is forced unless N = 3 and q12 = q21".into(),
            ));
        }
        for (ok, val, name) in [
            (constraints.chi1_n_trivial, &lambda.l1, "lambda1"),
            (constraints.chi2_n_trivial, &lambda.l2, "lambda2"),
            (constraints.chi1chi2_n_trivial, &lambda.l12, "lambda12"),
            (constraints.chi1sq_chi2_trivial, &lambda.l112, "lambda112"),
            (constraints.chi1_chi2sq_trivial, &lambda.l122, "lambda122"),
        ] {
            if !ok && !val.is_zero() {
                return Err(Error::InvalidParams(format!(
                    "{name} must vanish: its character condition does not hold"
                )));
            }
        }
        Ok(Model { braiding, case, lambda, constraints })
    }

    pub fn n(&self) -> u32 {
        self.braiding.n
    }

    pub fn order(&self) -> u32 {
        self.braiding.field_order()
    }

    pub fn scalar_zero(&self) -> Cyclotomic {
        Cyclotomic::zero(self.order())
    }

    pub fn scalar_one(&self) -> Cyclotomic {
        Cyclotomic::one(self.order())
    }

    /// All N^3 PBW basis monomials in lexicographic order.
    pub fn basis(&self) -> Vec<Mono> {
        let n = self.n() as u8;
        let mut out = Vec::with_capacity((n as usize).pow(3));
        for n2 in 0..n {
            for n12 in 0..n {
                for n1 in 0..n {
                    out.push(Mono::new(n2, n12, n1));
                }
            }
        }
        out
    }

    // -----------------------------------------------------------------
    // Rewriting
    // -----------------------------------------------------------------

    /// Normal form of a word over the generators `{x1, x2}` in the given
    /// context. For the cleft context the model's lambda vector supplies
    /// the right-hand sides of the deformed relations.
    pub fn rewrite_word(&self, ctx: Ctx, word: &[u8]) -> AlgebraElement {
        let letters: Vec<Letter> = word
            .iter()
            .map(|&g| if g == X1 { Letter::Y1 } else { Letter::Y2 })
            .collect();
        self.rewrite_letters(ctx, letters, self.scalar_one(), RewriteStrategy::Leftmost)
    }

    pub fn rewrite_word_with(&self, ctx: Ctx, word: &[u8], strategy: RewriteStrategy) -> AlgebraElement {
        let letters: Vec<Letter> = word
            .iter()
            .map(|&g| if g == X1 { Letter::Y1 } else { Letter::Y2 })
            .collect();
        self.rewrite_letters(ctx, letters, self.scalar_one(), strategy)
    }

    /// Core engine over the alphabet `{y2, y12, y1}`. Pair rules fix
    /// adjacent inversions; once a word is sorted, power relations
    /// `y^N -> nu` are applied to the run lengths.
    pub(crate) fn rewrite_letters(
        &self,
        ctx: Ctx,
        word: Vec<Letter>,
        coeff: Cyclotomic,
        strategy: RewriteStrategy,
    ) -> AlgebraElement {
        let q = &self.braiding.q;
        let q12 = &self.braiding.q12;
        let qq12 = q.mul(q12);
        let mut rng_state = match strategy {
            RewriteStrategy::Seeded(s) => s ^ 0x9e3779b97f4a7c15,
            _ => 0,
        };
        let mut out: LinComb<Mono> = LinComb::zero();
        let mut agenda: Vec<(Vec<Letter>, Cyclotomic)> = vec![(word, coeff)];
        while let Some((w, c)) = agenda.pop() {
            if c.is_zero() {
                continue;
            }
            let inversions: Vec<usize> =
                (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]).collect();
            if inversions.is_empty() {
                self.collect_sorted(ctx, &w, c, &mut out);
                continue;
            }
            let i = match strategy {
                RewriteStrategy::Leftmost => inversions[0],
                RewriteStrategy::Rightmost => *inversions.last().unwrap(),
                RewriteStrategy::Seeded(_) => {
                    rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    inversions[(rng_state >> 33) as usize % inversions.len()]
                }
            };
            match (w[i], w[i + 1]) {
                (Letter::Y1, Letter::Y2) => {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    agenda.push((swapped, c.mul(q12)));
                    let mut merged = w.clone();
                    merged[i] = Letter::Y12;
                    merged.remove(i + 1);
                    agenda.push((merged, c));
                }
                (Letter::Y1, Letter::Y12) => {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    agenda.push((swapped, c.mul(&qq12)));
                    if ctx == Ctx::Cleft && !self.lambda.l112.is_zero() {
                        let mut removed = w.clone();
                        removed.drain(i..i + 2);
                        agenda.push((removed, c.mul(&self.lambda.l112)));
                    }
                }
                (Letter::Y12, Letter::Y2) => {
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    agenda.push((swapped, c.mul(&qq12)));
                    if ctx == Ctx::Cleft && !self.lambda.l122.is_zero() {
                        let mut removed = w.clone();
                        removed.drain(i..i + 2);
                        agenda.push((removed, c.mul(&self.lambda.l122)));
                    }
                }
                _ => unreachable!("not an inversion"),
            }
        }
        AlgebraElement { ctx, terms: out }
    }

    fn collect_sorted(&self, ctx: Ctx, w: &[Letter], coeff: Cyclotomic, out: &mut LinComb<Mono>) {
        let n2 = w.iter().filter(|&&l| l == Letter::Y2).count() as u32;
        let n12 = w.iter().filter(|&&l| l == Letter::Y12).count() as u32;
        let n1 = w.iter().filter(|&&l| l == Letter::Y1).count() as u32;
        let n = self.n();
        match ctx {
            Ctx::PreNichols => {
                out.add_term(Mono::new(n2 as u8, n12 as u8, n1 as u8), coeff);
            }
            Ctx::Nichols => {
                if n2 < n && n12 < n && n1 < n {
                    out.add_term(Mono::new(n2 as u8, n12 as u8, n1 as u8), coeff);
                }
            }
            Ctx::Cleft => {
                let mut c = coeff;
                let mut exps = [n2, n12, n1];
                for (e, nu) in exps.iter_mut().zip([&self.lambda.l2, &self.lambda.l12, &self.lambda.l1]) {
                    if *e >= n {
                        let k = *e / n;
                        c = c.mul(&nu.pow(k as i64).unwrap());
                        *e %= n;
                        if c.is_zero() {
                            return;
                        }
                    }
                }
                out.add_term(Mono::new(exps[0] as u8, exps[1] as u8, exps[2] as u8), c);
            }
        }
    }

    // -----------------------------------------------------------------
    // Products
    // -----------------------------------------------------------------

    /// Product of two PBW monomials in the given context, via rewriting of
    /// the concatenated letter words.
    pub fn mul_monos(&self, ctx: Ctx, a: Mono, b: Mono) -> AlgebraElement {
        let mut w = a.letters();
        w.extend(b.letters());
        self.rewrite_letters(ctx, w, self.scalar_one(), RewriteStrategy::Leftmost)
    }

    /// Bilinear product of two elements of the same context.
    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        if a.ctx != b.ctx {
            return Err(Error::ContextMismatch(a.ctx.name(), b.ctx.name()));
        }
        let mut out = AlgebraElement::zero(a.ctx);
        for (ma, ca) in a.terms.iter() {
            for (mb, cb) in b.terms.iter() {
                let p = self.mul_monos(a.ctx, *ma, *mb).scale(&ca.mul(cb));
                out = out.add(&p)?;
            }
        }
        Ok(out)
    }

    /// Concatenation product in T(V).
    pub fn mul_free(&self, a: &FreeElement, b: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (wa, ca) in a.iter() {
            for (wb, cb) in b.iter() {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, ca.mul(cb));
            }
        }
        out
    }

    /// Projects a combination of free words into a basis-indexed context.
    pub fn project_free(&self, ctx: Ctx, a: &FreeElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(ctx);
        for (w, c) in a.iter() {
            let letters: Vec<Letter> = w.iter().map(|&g| if g == X1 { Letter::Y1 } else { Letter::Y2 }).collect();
            let p = self.rewrite_letters(ctx, letters, c.clone(), RewriteStrategy::Leftmost);
            out.terms = out.terms.add(&p.terms);
        }
        out
    }

    /// `x12 = x1 x2 - q12 x2 x1` as a free element.
    pub fn x12_free(&self) -> FreeElement {
        let mut e = FreeElement::term(vec![X1, X2], self.scalar_one());
        e.add_term(vec![X2, X1], self.braiding.q12.neg());
        e
    }

    /// `x112 = x1 x12 - q q12 x12 x1` as a free element.
    pub fn x112_free(&self) -> FreeElement {
        let x12 = self.x12_free();
        let x1 = FreeElement::term(vec![X1], self.scalar_one());
        let left = self.mul_free(&x1, &x12);
        let right = self.mul_free(&x12, &x1).scale(&self.braiding.q.mul(&self.braiding.q12));
        left.sub(&right)
    }

    /// The monomial lift `iota`: `x2^n2 (x1 x2 - q12 x2 x1)^n12 x1^n1`
    /// expanded in T(V).
    pub fn iota_free(&self, m: Mono) -> FreeElement {
        let x12 = self.x12_free();
        let mut word = vec![X2; m.n2 as usize];
        let mut acc = FreeElement::term(word.clone(), self.scalar_one());
        for _ in 0..m.n12 {
            acc = self.mul_free(&acc, &x12);
        }
        word = vec![X1; m.n1 as usize];
        acc = self.mul_free(&acc, &FreeElement::term(word, self.scalar_one()));
        acc
    }

    /// The coefficient `L_{(n1, s, m2)}` of the straightening identity for
    /// `y1^n1 y2^m2`.
    pub fn l_coeff(&self, n1: u32, s: u32, m2: u32) -> Cyclotomic {
        if s > n1 || s > m2 {
            return self.scalar_zero();
        }
        let q = &self.braiding.q;
        let b1 = q_binom(n1, s, q).unwrap();
        let b2 = q_binom(m2, s, q).unwrap();
        let f = q_factorial(s, q);
        let e = (m2 as i64) * (n1 as i64) - (s as i64) * (s as i64 + 1) / 2;
        b1.mul(&b2).mul(&f).mul(&self.braiding.q12.pow(e).unwrap())
    }

    /// Closed form of `y1^n1 y2^m2` in `E_lambda`:
    /// `sum_s L_{(n1,s,m2)} y2^{m2-s} y12^s y1^{n1-s}`.
    pub fn commute_x1n_x2m(&self, n1: u32, m2: u32) -> AlgebraElement {
        let mut out = AlgebraElement::zero(Ctx::Cleft);
        for s in 0..=n1.min(m2) {
            let c = self.l_coeff(n1, s, m2);
            let m = Mono::new((m2 - s) as u8, s as u8, (n1 - s) as u8);
            out.terms.add_term(m, c);
        }
        out
    }

    fn require_generic(&self) -> Result<()> {
        if self.case != Case::Generic {
            return Err(Error::WrongContext("generic"));
        }
        Ok(())
    }

    /// Closed-form product of two basis monomials in `E_lambda` when the
    /// quantum Serre relations hold, with `y^N -> lambda` reductions applied.
    pub fn mul_closed_generic(&self, n: Mono, m: Mono) -> Result<AlgebraElement> {
        self.require_generic()?;
        let nn = self.n();
        let (n2, n12, n1) = (n.n2 as u32, n.n12 as u32, n.n1 as u32);
        let (m2, m12, m1) = (m.n2 as u32, m.n12 as u32, m.n1 as u32);
        let qq12 = self.braiding.q.mul(&self.braiding.q12);
        let mut out = AlgebraElement::zero(Ctx::Cleft);
        for s in 0..=n1.min(m2) {
            let exp = (n12 * (m2 - s) + (n1 - s) * m12) as i64;
            let mut c = self.l_coeff(n1, s, m2).mul(&qq12.pow(exp).unwrap());
            if c.is_zero() {
                continue;
            }
            let mut exps = [n2 + m2 - s, n12 + m12 + s, n1 + m1 - s];
            for (e, nu) in exps.iter_mut().zip([&self.lambda.l2, &self.lambda.l12, &self.lambda.l1]) {
                if *e >= nn {
                    c = c.mul(&nu.pow((*e / nn) as i64).unwrap());
                    *e %= nn;
                }
            }
            out.terms.add_term(Mono::new(exps[0] as u8, exps[1] as u8, exps[2] as u8), c);
        }
        Ok(out)
    }

    /// Coefficient of the empty PBW monomial.
    pub fn eps0(&self, a: &AlgebraElement) -> Result<Cyclotomic> {
        if a.ctx == Ctx::PreNichols {
            return Err(Error::WrongContext("Nichols or cleft"));
        }
        Ok(a.terms.coeff(&Mono::UNIT).cloned().unwrap_or_else(|| self.scalar_zero()))
    }

    /// Counit on basis-indexed elements: the coefficient of the unit.
    pub fn counit(&self, a: &AlgebraElement) -> Cyclotomic {
        a.terms.coeff(&Mono::UNIT).cloned().unwrap_or_else(|| self.scalar_zero())
    }

    /// `eps0(y_n y_m)` by the five-constraint table for generic liftings.
    pub fn eps0_closed(&self, n: Mono, m: Mono) -> Result<Cyclotomic> {
        self.require_generic()?;
        let nn = self.n();
        let (n2, n12, n1) = (n.n2 as u32, n.n12 as u32, n.n1 as u32);
        let (m2, m12, m1) = (m.n2 as u32, m.n12 as u32, m.n1 as u32);
        let a = n2 + m2;
        let b = n12 + m12;
        let c = n1 + m1;
        let q = &self.braiding.q;
        let q12 = &self.braiding.q12;
        let qq12 = q.mul(q12);
        let in0n = |v: u32| v == 0 || v == nn;
        let l = &self.lambda;
        // rising product (lo+1)_q ... (hi)_q, the well-defined form of (hi)!_q / (lo)!_q
        let falling = |hi: u32, lo: u32| -> Cyclotomic {
            let mut acc = self.scalar_one();
            for i in lo + 1..=hi {
                acc = acc.mul(&q_int(i, q));
            }
            acc
        };
        let lpow = |v: &Cyclotomic, e: u32| -> Cyclotomic {
            debug_assert!(e % nn == 0);
            v.pow((e / nn) as i64).unwrap()
        };
        if in0n(a) && in0n(b) && in0n(c) {
            // c1
            let pref = q12
                .pow((n1 * m2) as i64)
                .unwrap()
                .mul(&qq12.pow((n12 * m2 + n1 * m12) as i64).unwrap());
            return Ok(pref.mul(&lpow(&l.l2, a)).mul(&lpow(&l.l12, b)).mul(&lpow(&l.l1, c)));
        }
        if n2 == 0 && m1 == 0 && n1 == m2 && n1 > 0 && (b + n1 == nn || b + n1 == 2 * nn) {
            // c2
            let e = (n1 as i64 * n1 as i64 - n1 as i64) / 2;
            return Ok(q_factorial(n1, q).mul(&q12.pow(e).unwrap()).mul(&lpow(&l.l12, b + n1)));
        }
        if m1 == 0 && n1 > 0 && n1 < m2 && a == nn + n1 && (b + n1 == nn || b + n1 == 2 * nn) {
            // c3
            let e = (2 * n1 as i64 * m2 as i64 - (n1 as i64 * n1 as i64 + n1 as i64)) / 2;
            return Ok(falling(m2, m2 - n1)
                .mul(&q12.pow(e).unwrap())
                .mul(&qq12.pow((n12 * (m2 - n1)) as i64).unwrap())
                .mul(&l.l2)
                .mul(&lpow(&l.l12, b + n1)));
        }
        if n2 == 0 && m2 > 0 && m2 < n1 && c == nn + m2 && (b + m2 == nn || b + m2 == 2 * nn) {
            // c4
            let e = (2 * n1 as i64 * m2 as i64 - (m2 as i64 * m2 as i64 + m2 as i64)) / 2;
            return Ok(falling(n1, n1 - m2)
                .mul(&q12.pow(e).unwrap())
                .mul(&qq12.pow((m12 * (n1 - m2)) as i64).unwrap())
                .mul(&lpow(&l.l12, b + m2))
                .mul(&l.l1));
        }
        if a == c && a > nn && (a + b == 2 * nn || a + b == 3 * nn) {
            // c5, with s = a - N
            let s = a - nn;
            let e = (n12 * (m2 - s) + (n1 - s) * m12) as i64;
            return Ok(self
                .l_coeff(n1, s, m2)
                .mul(&qq12.pow(e).unwrap())
                .mul(&l.l2)
                .mul(&lpow(&l.l12, a + b - nn))
                .mul(&l.l1));
        }
        Ok(self.scalar_zero())
    }
}
