//! Braided coproducts: the closed-form coproduct on PBW monomials, a
//! word-level oracle in T(V), and the atypical closed form carrying the
//! extra `x112` term.

use crate::algebra::{multidegree_word, Ctx, FreeElement, GenWord, Mono, X1, X2};
use crate::linear::LinComb;
use crate::scalar::{q_binom, Cyclotomic};
use crate::{Error, Model, Result};

/// Element of `B (x) B` in the PBW-pair basis.
pub type Tensor2 = LinComb<(Mono, Mono)>;
/// Element of `B (x) B (x) B`.
pub type Tensor3 = LinComb<(Mono, Mono, Mono)>;
/// Element of `T(V) (x) T(V)` in the word-pair basis.
pub type WordTensor2 = LinComb<(GenWord, GenWord)>;
/// Mixed tensor with a free-word left leg and a Nichols-basis right leg.
pub type WordMonoTensor = LinComb<(GenWord, Mono)>;

impl Model {
    /// Coefficient `C_{(j,k,l,m)}` of the closed-form coproduct of
    /// `x2^n2 x12^n12 x1^n1`.
    pub fn c_coeff(&self, n: Mono, j: u32, k: u32, l: u32, m: u32) -> Cyclotomic {
        let (n2, n12, n1) = (n.n2 as u32, n.n12 as u32, n.n1 as u32);
        debug_assert!(j <= n2 && k <= n12 && l <= k && m <= n1);
        let q = &self.braiding.q;
        let b = q_binom(n2, j, q)
            .unwrap()
            .mul(&q_binom(n12, k, q).unwrap())
            .mul(&q_binom(k, l, q).unwrap())
            .mul(&q_binom(n1, m, q).unwrap());
        let d = k - l;
        let one_minus = self.scalar_one().sub(&q.pow(-1).unwrap());
        let e21 = ((n2 - j) * (k + m) + m * (n12 - l)) as i64 + (d as i64 - 1) * d as i64 / 2;
        let eq = ((n2 - j) * l + m * (n12 - k)) as i64;
        b.mul(&one_minus.pow(d as i64).unwrap_or_else(|_| self.scalar_zero()))
            .mul(&self.braiding.q21.pow(e21).unwrap())
            .mul(&q.pow(eq).unwrap())
    }

    /// The two-index coefficient `C_{(k,m)} = C_{(0,k,0,m)}`.
    pub fn c_km(&self, n: Mono, k: u32, m: u32) -> Cyclotomic {
        self.c_coeff(n, 0, k, 0, m)
    }

    /// Closed-form coproduct of a PBW monomial. In the Nichols context,
    /// tensor legs with an exponent at or above `N` are zero and dropped;
    /// the pre-Nichols context keeps every leg.
    pub fn delta_closed(&self, ctx: Ctx, n: Mono) -> Result<Tensor2> {
        if ctx == Ctx::Cleft {
            return Err(Error::WrongContext("Nichols or pre-Nichols"));
        }
        let (n2, n12, n1) = (n.n2 as u32, n.n12 as u32, n.n1 as u32);
        let nn = self.n();
        let mut out = Tensor2::zero();
        for j in 0..=n2 {
            for k in 0..=n12 {
                for l in 0..=k {
                    for m in 0..=n1 {
                        let c = self.c_coeff(n, j, k, l, m);
                        if c.is_zero() {
                            continue;
                        }
                        let left = [j, l, k + m - l];
                        let right = [n2 + k - j - l, n12 - k, n1 - m];
                        if ctx == Ctx::Nichols
                            && (left.iter().any(|&e| e >= nn) || right.iter().any(|&e| e >= nn))
                        {
                            continue;
                        }
                        out.add_term(
                            (
                                Mono::new(left[0] as u8, left[1] as u8, left[2] as u8),
                                Mono::new(right[0] as u8, right[1] as u8, right[2] as u8),
                            ),
                            c,
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn delta_nichols(&self, n: Mono) -> Tensor2 {
        self.delta_closed(Ctx::Nichols, n).unwrap()
    }

    /// `delta(b) - b (x) 1 - 1 (x) b`.
    pub fn reduced_delta(&self, ctx: Ctx, n: Mono) -> Result<Tensor2> {
        let mut d = self.delta_closed(ctx, n)?;
        if !n.is_unit() {
            d.add_term((n, Mono::UNIT), self.scalar_one().neg());
            d.add_term((Mono::UNIT, n), self.scalar_one().neg());
        } else {
            // delta(1) = 1 (x) 1, so the reduced coproduct of 1 is -(1 (x) 1)
            d.add_term((Mono::UNIT, Mono::UNIT), self.scalar_one().neg().sub(&self.scalar_one()));
        }
        Ok(d)
    }

    /// `(delta (x) id) delta` on a Nichols monomial.
    pub fn delta_two(&self, n: Mono) -> Tensor3 {
        let mut out = Tensor3::zero();
        for ((a, b), c) in self.delta_nichols(n).iter() {
            for ((a1, a2), c2) in self.delta_nichols(*a).iter() {
                out.add_term((*a1, *a2, *b), c.mul(c2));
            }
        }
        out
    }

    /// Word-level coproduct oracle in T(V): the braided-multiplicative
    /// extension of `delta(x_i) = x_i (x) 1 + 1 (x) x_i`.
    pub fn delta_free(&self, w: &[u8]) -> WordTensor2 {
        let mut acc = WordTensor2::term((Vec::new(), Vec::new()), self.scalar_one());
        for &g in w {
            let gdeg = if g == X1 { (1, 0) } else { (0, 1) };
            let mut next = WordTensor2::zero();
            for ((a, b), c) in acc.iter() {
                // (a (x) b)(g (x) 1): g passes b
                let braid = self.braiding.braid(multidegree_word(b), gdeg);
                let mut ag = a.clone();
                ag.push(g);
                next.add_term((ag, b.clone()), c.mul(&braid));
                // (a (x) b)(1 (x) g)
                let mut bg = b.clone();
                bg.push(g);
                next.add_term((a.clone(), bg), c.clone());
            }
            acc = next;
        }
        acc
    }

    /// Linear extension of [`Model::delta_free`].
    pub fn delta_free_elt(&self, e: &FreeElement) -> WordTensor2 {
        let mut out = WordTensor2::zero();
        for (w, c) in e.iter() {
            for (key, c2) in self.delta_free(w).into_iter_terms() {
                out.add_term(key, c.mul(&c2));
            }
        }
        out
    }

    /// Closed-form coproduct of the monomial lift of `x2^n2 x12^n12 x1^n1`
    /// in T(V), with the right legs projected onto the Nichols algebra and
    /// the left legs kept as free words. Valid for `n12 <= 2`: beyond the
    /// pre-Nichols formula, only one extra family of terms (carrying the
    /// quantum Serre element `x112` in the left leg) survives the right-leg
    /// projection, appearing when `n12 = 2`.
    pub fn delta_atypical(&self, n: Mono) -> Result<WordMonoTensor> {
        if n.n12 > 2 {
            return Err(Error::InvalidParams(format!(
                "closed atypical coproduct requires n12 <= 2, got {}",
                n.n12
            )));
        }
        let (n2, n12, n1) = (n.n2 as u32, n.n12 as u32, n.n1 as u32);
        let nn = self.n();
        let q = &self.braiding.q;
        let mut out = WordMonoTensor::zero();
        for j in 0..=n2 {
            for k in 0..=n12 {
                for l in 0..=k {
                    for m in 0..=n1 {
                        let c = self.c_coeff(n, j, k, l, m);
                        if c.is_zero() {
                            continue;
                        }
                        let right = [n2 + k - j - l, n12 - k, n1 - m];
                        if right.iter().any(|&e| e >= nn) {
                            continue;
                        }
                        let right = Mono::new(right[0] as u8, right[1] as u8, right[2] as u8);
                        let left = self.iota_free(Mono::new(j as u8, l as u8, (k + m - l) as u8));
                        for (lw, lc) in left.iter() {
                            out.add_term((lw.clone(), right), c.mul(lc));
                        }
                    }
                }
            }
        }
        if n12 == 2 {
            let x112 = self.x112_free();
            let pref = self
                .scalar_one()
                .sub(&q.pow(2).unwrap())
                .mul(&self.braiding.q12.pow(-1).unwrap());
            for j in 0..=n2 {
                for m in 0..=n1 {
                    if n2 - j + 1 >= nn {
                        continue;
                    }
                    let e21 = ((n2 - j) * (m + 2) + m) as i64;
                    let a = pref
                        .mul(&q_binom(n2, j, q).unwrap())
                        .mul(&q_binom(n1, m, q).unwrap())
                        .mul(&q.pow((n2 - j) as i64).unwrap())
                        .mul(&self.braiding.q21.pow(e21).unwrap());
                    if a.is_zero() {
                        continue;
                    }
                    let right = Mono::new((n2 - j + 1) as u8, 0, (n1 - m) as u8);
                    for (mid, mc) in x112.iter() {
                        let mut lw: GenWord = vec![X2; j as usize];
                        lw.extend_from_slice(mid);
                        lw.extend(std::iter::repeat(X1).take(m as usize));
                        out.add_term((lw, right), a.mul(mc));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Projects both legs of a word tensor into a basis-indexed context.
    pub fn project_tensor(&self, ctx: Ctx, t: &WordTensor2) -> Tensor2 {
        let mut out = Tensor2::zero();
        for ((a, b), c) in t.iter() {
            let pa = self.rewrite_word(ctx, a);
            let pb = self.rewrite_word(ctx, b);
            for (ma, ca) in pa.terms.iter() {
                for (mb, cb) in pb.terms.iter() {
                    out.add_term((*ma, *mb), c.mul(ca).mul(cb));
                }
            }
        }
        out
    }
}
