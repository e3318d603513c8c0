//! Hopf 2-cocycles `sigma(a, b) = eps0(gamma(a) gamma(b))`, the convolution
//! algebra of functionals on `B_q`, the orbit action of convolution units,
//! and serializable cocycle tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Ctx, Mono};
use crate::linear::LinComb;
use crate::scalar::Cyclotomic;
use crate::section::SectionMap;
use crate::{Error, Model, Result};

/// Support of the unital `H`-linear functionals on `B_q` for `N = 3`,
/// besides the unit: the monomials of total letter degree divisible by 3.
pub const ALPHA_SUPPORT: [(u8, u8, u8); 8] = [
    (1, 1, 0),
    (2, 0, 1),
    (1, 0, 2),
    (0, 1, 1),
    (2, 1, 2),
    (1, 2, 1),
    (2, 2, 0),
    (0, 2, 2),
];

/// A linear functional on `B_q`, stored by its values on the PBW basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    pub values: LinComb<Mono>,
}

impl Functional {
    pub fn zero() -> Self {
        Functional { values: LinComb::zero() }
    }

    /// The counit, which is the convolution unit.
    pub fn eps(model: &Model) -> Self {
        Functional { values: LinComb::term(Mono::UNIT, model.scalar_one()) }
    }

    pub fn value(&self, model: &Model, m: &Mono) -> Cyclotomic {
        self.values.coeff(m).cloned().unwrap_or_else(|| model.scalar_zero())
    }

    pub fn eval(&self, model: &Model, a: &AlgebraElement) -> Result<Cyclotomic> {
        if a.ctx != Ctx::Nichols {
            return Err(Error::WrongContext("Nichols"));
        }
        let mut acc = model.scalar_zero();
        for (m, c) in a.terms.iter() {
            if let Some(v) = self.values.coeff(m) {
                acc = acc.add(&v.mul(c));
            }
        }
        Ok(acc)
    }

    /// `H`-invariance: the support only contains weights on which all
    /// braiding characters act trivially.
    pub fn is_h_invariant(&self, model: &Model) -> bool {
        self.values.iter().all(|(m, _)| weight_trivial(model, m.multidegree()))
    }
}

fn weight_trivial(model: &Model, d: (u32, u32)) -> bool {
    let b = &model.braiding;
    let chi1 = b.q.pow(d.0 as i64).unwrap().mul(&b.q21.pow(d.1 as i64).unwrap());
    let chi2 = b.q12.pow(d.0 as i64).unwrap().mul(&b.q.pow(d.1 as i64).unwrap());
    chi1.is_one() && chi2.is_one()
}

/// A bilinear functional on `B_q (x) B_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bifunctional {
    pub values: LinComb<(Mono, Mono)>,
}

impl Bifunctional {
    pub fn zero() -> Self {
        Bifunctional { values: LinComb::zero() }
    }

    pub fn value(&self, model: &Model, a: &Mono, b: &Mono) -> Cyclotomic {
        self.values.coeff(&(*a, *b)).cloned().unwrap_or_else(|| model.scalar_zero())
    }
}

/// Sparse table of the nonzero values of a bilinear form on the PBW basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CocycleTable {
    pub n: u32,
    pub entries: Vec<TableEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub left: Mono,
    pub right: Mono,
    pub value: Cyclotomic,
    pub display: String,
}

impl CocycleTable {
    pub fn from_bifunctional(model: &Model, f: &Bifunctional) -> Self {
        let entries = f
            .values
            .iter()
            .map(|((a, b), v)| TableEntry {
                left: *a,
                right: *b,
                value: v.clone(),
                display: v.to_q_string(),
            })
            .collect();
        CocycleTable { n: model.n(), entries }
    }

    pub fn to_bifunctional(&self) -> Bifunctional {
        let mut values = LinComb::zero();
        for e in &self.entries {
            values.add_term((e.left, e.right), e.value.clone());
        }
        Bifunctional { values }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("left,right,value\n");
        for e in &self.entries {
            out.push_str(&format!(
                "\"{},{},{}\",\"{},{},{}\",\"{}\"\n",
                e.left.n2, e.left.n12, e.left.n1, e.right.n2, e.right.n12, e.right.n1, e.display
            ));
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| left | right | value |\n|---|---|---|\n");
        for e in &self.entries {
            out.push_str(&format!("| {} | {} | {} |\n", e.left, e.right, e.display));
        }
        out
    }
}

impl Model {
    /// `sigma(a, b) = eps0(gamma(a) gamma(b))` on basis monomials.
    pub fn sigma_pair(&self, gamma: &SectionMap, a: Mono, b: Mono) -> Result<Cyclotomic> {
        let ga = gamma
            .get(&a)
            .ok_or_else(|| Error::InvalidParams(format!("monomial {a} outside the basis")))?;
        let gb = gamma
            .get(&b)
            .ok_or_else(|| Error::InvalidParams(format!("monomial {b} outside the basis")))?;
        self.eps0(&self.mul(ga, gb)?)
    }

    /// The full Hopf 2-cocycle as a sparse bifunctional.
    pub fn sigma(&self, gamma: &SectionMap) -> Result<Bifunctional> {
        // gamma values and their products only involve cleft products of
        // PBW monomials; cache the eps0 of those products
        let mut cache: BTreeMap<(Mono, Mono), Cyclotomic> = BTreeMap::new();
        let mut values = LinComb::zero();
        for a in self.basis() {
            let ga = gamma
                .get(&a)
                .ok_or_else(|| Error::InvalidParams(format!("monomial {a} outside the basis")))?;
            for b in self.basis() {
                let gb = gamma.get(&b).unwrap();
                let mut acc = self.scalar_zero();
                for (ma, ca) in ga.terms.iter() {
                    for (mb, cb) in gb.terms.iter() {
                        let e = cache
                            .entry((*ma, *mb))
                            .or_insert_with(|| {
                                self.eps0(&self.mul_monos(Ctx::Cleft, *ma, *mb)).unwrap()
                            })
                            .clone();
                        if !e.is_zero() {
                            acc = acc.add(&e.mul(ca).mul(cb));
                        }
                    }
                }
                if !acc.is_zero() {
                    values.add_term((a, b), acc);
                }
            }
        }
        Ok(Bifunctional { values })
    }

    /// Checks the defining identity of the cocycle against the section:
    /// `sum sigma(a_(1), b_(1)) gamma(a_(2) b_(2)) = gamma(a) gamma(b)`,
    /// with the braiding scalar from swapping `a_(2)` past `b_(1)`.
    pub fn verify_reconstruction(&self, gamma: &SectionMap, sigma: &Bifunctional) -> Result<()> {
        for a in self.basis() {
            let da = self.delta_nichols(a);
            for b in self.basis() {
                let db = self.delta_nichols(b);
                let mut lhs = AlgebraElement::zero(Ctx::Cleft);
                for ((a1, a2), ca) in da.iter() {
                    for ((b1, b2), cb) in db.iter() {
                        let s = sigma.value(self, a1, b1);
                        if s.is_zero() {
                            continue;
                        }
                        let braid = self.braiding.braid(a2.multidegree(), b1.multidegree());
                        let prod = self.mul_monos(Ctx::Nichols, *a2, *b2);
                        let g = gamma.apply(self, &prod)?;
                        lhs = lhs.add(&g.scale(&s.mul(ca).mul(cb).mul(&braid)))?;
                    }
                }
                let rhs = self.mul(gamma.get(&a).unwrap(), gamma.get(&b).unwrap())?;
                if lhs != rhs {
                    return Err(Error::VerificationFailed(format!(
                        "cocycle reconstruction fails at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Convolution product `(f * g)(b) = sum f(b_(1)) g(b_(2))`.
    pub fn functional_convolve(&self, f: &Functional, g: &Functional) -> Functional {
        let mut values = LinComb::zero();
        for b in self.basis() {
            let mut acc = self.scalar_zero();
            for ((b1, b2), c) in self.delta_nichols(b).iter() {
                if let (Some(x), Some(y)) = (f.values.coeff(b1), g.values.coeff(b2)) {
                    acc = acc.add(&x.mul(y).mul(c));
                }
            }
            values.add_term(b, acc);
        }
        Functional { values }
    }

    /// Convolution inverse via the geometric series of `eps - f / f(1)`,
    /// which terminates because its convolution powers raise the minimal
    /// degree of the support.
    pub fn functional_inverse(&self, f: &Functional) -> Result<Functional> {
        let unit = f.value(self, &Mono::UNIT);
        if unit.is_zero() {
            return Err(Error::NotInvertibleFunctional);
        }
        let unit_inv = unit.inv()?;
        let mut h = Functional::eps(self);
        h.values = h.values.sub(&f.values.scale(&unit_inv));
        let mut inv = Functional::eps(self);
        let mut power = Functional::eps(self);
        let bound = 4 * (self.n() as usize - 1) + 1;
        for _ in 0..bound {
            power = self.functional_convolve(&power, &h);
            if power.values.is_zero() {
                break;
            }
            inv.values = inv.values.add(&power.values);
        }
        inv.values = inv.values.scale(&unit_inv);
        Ok(inv)
    }

    /// The unital `H`-linear functional `alpha = eps + sum c_i delta_{m_i}`
    /// over the eight support monomials (`N = 3` only).
    pub fn alpha_from_params(&self, c: &[Cyclotomic; 8]) -> Result<Functional> {
        if self.n() != 3 {
            return Err(Error::InvalidParams("the unit group is computed for N = 3".into()));
        }
        let mut f = Functional::eps(self);
        for ((n2, n12, n1), v) in ALPHA_SUPPORT.iter().zip(c.iter()) {
            f.values.add_term(Mono::new(*n2, *n12, *n1), v.clone());
        }
        Ok(f)
    }

    /// Closed form of the convolution inverse of a unital `H`-linear
    /// functional: `alpha^{-1} = -alpha` in degree 3, with quadratic
    /// corrections in degree 6.
    pub fn alpha_inverse_closed(&self, alpha: &Functional) -> Result<Functional> {
        if self.n() != 3 {
            return Err(Error::InvalidParams("the unit group is computed for N = 3".into()));
        }
        let a = |n2: u8, n12: u8, n1: u8| alpha.value(self, &Mono::new(n2, n12, n1));
        let q = &self.braiding.q;
        let qq2 = q.sub(&q.pow(2).unwrap());
        let mut f = Functional::eps(self);
        for (n2, n12, n1) in [(1, 1, 0), (2, 0, 1), (1, 0, 2), (0, 1, 1)] {
            f.values.add_term(Mono::new(n2, n12, n1), a(n2, n12, n1).neg());
        }
        let three = Cyclotomic::from_integer(self.order(), 3);
        f.values.add_term(
            Mono::new(2, 1, 2),
            a(2, 1, 2)
                .neg()
                .add(&a(1, 0, 2).mul(&a(1, 1, 0)))
                .add(&a(2, 0, 1).mul(&a(0, 1, 1).add(&qq2.mul(&a(1, 0, 2))))),
        );
        f.values.add_term(
            Mono::new(0, 2, 2),
            a(0, 2, 2)
                .neg()
                .add(&qq2.mul(&a(0, 1, 1)).mul(&a(1, 0, 2)))
                .add(&a(0, 1, 1).pow(2)?),
        );
        f.values.add_term(
            Mono::new(2, 2, 0),
            a(2, 2, 0)
                .neg()
                .add(&qq2.mul(&a(2, 0, 1)).mul(&a(1, 1, 0)))
                .add(&a(1, 1, 0).pow(2)?),
        );
        f.values.add_term(
            Mono::new(1, 2, 1),
            a(1, 2, 1)
                .neg()
                .sub(&three.mul(&a(2, 0, 1)).mul(&a(1, 0, 2)))
                .add(&qq2.mul(&a(2, 0, 1)).mul(&a(0, 1, 1)))
                .add(&qq2.mul(&a(1, 0, 2)).mul(&a(1, 1, 0)))
                .add(&a(1, 1, 0).mul(&a(0, 1, 1))),
        );
        Ok(f)
    }

    /// Orbit action of a convolution unit on a cocycle:
    /// `(alpha -> sigma)(x, y) = sum alpha(x_(1)) alpha(y_(1))
    /// sigma(x_(2), y_(2)) alpha^{-1}(x_(3) y_(3))`, with the braiding
    /// scalar of `x_(3)` past `y_(2)` carried by the group-likes of the
    /// bosonization. The scalar is invisible in the first rows but enters
    /// the deeper entries of the table.
    pub fn orbit_act(&self, alpha: &Functional, sigma: &Bifunctional) -> Result<Bifunctional> {
        let alpha_inv = self.functional_inverse(alpha)?;
        // pre-filter the iterated coproducts by the support of alpha
        let mut filtered: BTreeMap<Mono, Vec<(Mono, Mono, Mono, Cyclotomic)>> = BTreeMap::new();
        for x in self.basis() {
            let mut list = Vec::new();
            for ((x1, x2, x3), c) in self.delta_two(x).iter() {
                if let Some(a1) = alpha.values.coeff(x1) {
                    list.push((*x1, *x2, *x3, c.mul(a1)));
                }
            }
            filtered.insert(x, list);
        }
        let mut values = LinComb::zero();
        for x in self.basis() {
            for y in self.basis() {
                let mut acc = self.scalar_zero();
                for (_, x2, x3, cx) in &filtered[&x] {
                    for (_, y2, y3, cy) in &filtered[&y] {
                        let s = sigma.value(self, x2, y2);
                        if s.is_zero() {
                            continue;
                        }
                        let prod = self.mul_monos(Ctx::Nichols, *x3, *y3);
                        let tail = alpha_inv.eval(self, &prod)?;
                        if tail.is_zero() {
                            continue;
                        }
                        let br = self.braiding.braid(x3.multidegree(), y2.multidegree());
                        acc = acc.add(&cx.mul(cy).mul(&s).mul(&tail).mul(&br));
                    }
                }
                if !acc.is_zero() {
                    values.add_term((x, y), acc);
                }
            }
        }
        Ok(Bifunctional { values })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BraidingMatrix, Case, DeformationParams, RealizationConstraints};
    use num::{BigInt, BigRational};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn generic_model(n: u32, q12_exp: i64, lambda: [i64; 3]) -> Model {
        let b = BraidingMatrix::from_exponents(n, 1, q12_exp).unwrap();
        let ord = b.field_order();
        let mut l = DeformationParams::zero(ord);
        l.l1 = Cyclotomic::from_integer(ord, lambda[0]);
        l.l2 = Cyclotomic::from_integer(ord, lambda[1]);
        l.l12 = Cyclotomic::from_integer(ord, lambda[2]);
        Model::new(b, Case::Generic, l, RealizationConstraints::all_permitted(n)).unwrap()
    }

    fn atypical_model(lambda: [BigRational; 5]) -> Model {
        let b = BraidingMatrix::from_exponents(3, 1, 1).unwrap();
        let l = DeformationParams::from_rationals(3, lambda);
        Model::new(b, Case::Atypical, l, RealizationConstraints::all_permitted(3)).unwrap()
    }

    fn atyp() -> (Model, SectionMap, Bifunctional) {
        let m = atypical_model([rat(2, 1), rat(3, 1), rat(5, 1), rat(7, 1), rat(11, 1)]);
        let gamma = m.build_section().unwrap();
        let sigma = m.sigma(&gamma).unwrap();
        (m, gamma, sigma)
    }

    #[test]
    fn unitality_and_counit_row() {
        let (m, _, sigma) = atyp();
        for b in m.basis() {
            let expected = if b.is_unit() { m.scalar_one() } else { m.scalar_zero() };
            assert_eq!(sigma.value(&m, &Mono::UNIT, &b), expected);
            assert_eq!(sigma.value(&m, &b, &Mono::UNIT), expected);
        }
    }

    #[test]
    fn generic_first_row_table() {
        for n in [3u32, 4, 5] {
            let m = generic_model(n, 1, [2, 3, 5]);
            let gamma = m.build_section().unwrap();
            let x2 = Mono::new(1, 0, 0);
            let x1 = Mono::new(0, 0, 1);
            let nm1 = (n - 1) as u8;
            // sigma(x2, x2^{N-1}) = lambda2, sigma(x1, x1^{N-1}) = lambda1
            assert_eq!(m.sigma_pair(&gamma, x2, Mono::new(nm1, 0, 0)).unwrap(), m.lambda.l2);
            assert_eq!(m.sigma_pair(&gamma, x1, Mono::new(0, 0, nm1)).unwrap(), m.lambda.l1);
            // sigma(x1, x2 x12^{N-1}) = lambda12
            assert_eq!(m.sigma_pair(&gamma, x1, Mono::new(1, nm1, 0)).unwrap(), m.lambda.l12);
            // cross entries vanish
            assert!(m.sigma_pair(&gamma, x2, Mono::new(0, 0, nm1)).unwrap().is_zero());
            assert!(m.sigma_pair(&gamma, x1, Mono::new(nm1, 0, 0)).unwrap().is_zero());
            assert!(m.sigma_pair(&gamma, x2, Mono::new(1, nm1, 0)).unwrap().is_zero());
            // sigma(x2, x2^{m-1} x12^{N-m} x1^m)
            //   = -(1 - q^{N-1})^{N-m} q21^{(N+m-1)(N-m)/2} lambda1 lambda2
            for mm in 1..n {
                let col = Mono::new((mm - 1) as u8, (n - mm) as u8, mm as u8);
                let e = ((n + mm - 1) * (n - mm) / 2) as i64;
                let expected = m
                    .scalar_one()
                    .sub(&m.braiding.q.pow(n as i64 - 1).unwrap())
                    .pow((n - mm) as i64)
                    .unwrap()
                    .neg()
                    .mul(&m.braiding.q21.pow(e).unwrap())
                    .mul(&m.lambda.l1)
                    .mul(&m.lambda.l2);
                assert_eq!(m.sigma_pair(&gamma, x2, col).unwrap(), expected, "N={n}, m={mm}");
                assert!(m.sigma_pair(&gamma, x1, col).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn atypical_first_row_table() {
        let (m, _, sigma) = atyp();
        let q = &m.braiding.q;
        let l = &m.lambda;
        let qmq2 = q.sub(&q.pow(2).unwrap());
        let three_q2 = q.pow(2).unwrap().scale(&rat(3, 1));
        let x2 = Mono::new(1, 0, 0);
        let x1 = Mono::new(0, 0, 1);
        let cols = [
            Mono::new(2, 0, 0),
            Mono::new(0, 1, 0),
            Mono::new(0, 0, 2),
            Mono::new(1, 2, 0),
            Mono::new(1, 1, 2),
            Mono::new(0, 2, 1),
        ];
        let row_x2 = [
            l.l2.clone(),
            m.scalar_zero(),
            m.scalar_zero(),
            qmq2.mul(&l.l2).mul(&l.l112),
            qmq2.mul(&l.l2).mul(&l.l1),
            three_q2.mul(&l.l2).mul(&l.l1),
        ];
        let row_x1 = [
            l.l122.clone(),
            l.l112.clone(),
            l.l1.clone(),
            qmq2.mul(&l.l112).mul(&l.l122).add(&l.l12),
            qmq2.mul(&l.l1).mul(&l.l122),
            three_q2.mul(&l.l1).mul(&l.l122),
        ];
        for (col, (vx2, vx1)) in cols.iter().zip(row_x2.iter().zip(row_x1.iter())) {
            assert_eq!(&sigma.value(&m, &x2, col), vx2, "row x2, column {col}");
            assert_eq!(&sigma.value(&m, &x1, col), vx1, "row x1, column {col}");
        }
    }

    #[test]
    fn reconstruction_identity() {
        let (m, gamma, sigma) = atyp();
        m.verify_reconstruction(&gamma, &sigma).unwrap();
        let g = generic_model(3, 2, [2, 3, 5]);
        let gam = g.build_section().unwrap();
        let sig = g.sigma(&gam).unwrap();
        g.verify_reconstruction(&gam, &sig).unwrap();
    }

    #[test]
    fn convolution_inverse() {
        let (m, _, _) = atyp();
        let coeffs: [Cyclotomic; 8] = std::array::from_fn(|i| {
            Cyclotomic::from_integer(3, i as i64 + 1).mul(&m.braiding.q.pow(i as i64).unwrap())
        });
        let alpha = m.alpha_from_params(&coeffs).unwrap();
        assert!(alpha.is_h_invariant(&m));
        let inv = m.functional_inverse(&alpha).unwrap();
        let eps = Functional::eps(&m);
        assert_eq!(m.functional_convolve(&alpha, &inv), eps);
        assert_eq!(m.functional_convolve(&inv, &alpha), eps);
        // closed form agrees
        assert_eq!(m.alpha_inverse_closed(&alpha).unwrap(), inv);
        // non-unital functionals are rejected
        let mut bad = Functional::zero();
        bad.values.add_term(Mono::new(1, 1, 0), m.scalar_one());
        assert!(m.functional_inverse(&bad).is_err());
    }

    #[test]
    fn orbit_by_counit_is_identity() {
        let (m, _, sigma) = atyp();
        let eps = Functional::eps(&m);
        assert_eq!(m.orbit_act(&eps, &sigma).unwrap(), sigma);
    }

    #[test]
    fn orbit_first_rows() {
        let (m, _, sigma) = atyp();
        let q = &m.braiding.q;
        let l = &m.lambda;
        let coeffs: [Cyclotomic; 8] =
            std::array::from_fn(|i| Cyclotomic::from_integer(3, [2, 5, 3, 7, 1, 4, 6, 8][i]));
        let alpha = m.alpha_from_params(&coeffs).unwrap();
        let orb = m.orbit_act(&alpha, &sigma).unwrap();
        let a = |i: usize| coeffs[i].clone();
        // indices: 0:(1,1,0) 1:(2,0,1) 2:(1,0,2) 3:(0,1,1)
        //          4:(2,1,2) 5:(1,2,1) 6:(2,2,0) 7:(0,2,2)
        let x2 = Mono::new(1, 0, 0);
        let x1 = Mono::new(0, 0, 1);
        let qmq2 = q.sub(&q.pow(2).unwrap());
        let q2mq = qmq2.neg();
        let q2 = q.pow(2).unwrap();
        let three = Cyclotomic::from_integer(3, 3);
        let two = Cyclotomic::from_integer(3, 2);
        let one = m.scalar_one();

        let t12 = a(1).neg();
        let t13 = a(0).neg();
        let t21 = q2.mul(&a(1)).neg().add(&a(0));
        let t14 = a(2).neg();
        let t22 = q.mul(&a(2)).neg().sub(&a(3));
        let t23 = q2.mul(&a(3)).neg();
        let t15 = qmq2
            .mul(&l.l2.mul(&a(2)).add(&a(1).mul(&a(0))))
            .add(&q2.sub(&one).mul(&a(1).pow(2).unwrap()));
        let t16 = three
            .neg()
            .mul(&l.l2)
            .mul(&a(2))
            .add(&qmq2.mul(&l.l2.mul(&a(3)).add(&a(1).mul(&a(0)))))
            .sub(&q.mul(&a(0).pow(2).unwrap()))
            .sub(&a(6));
        let t17 = a(1)
            .neg()
            .mul(&three.mul(&q2).mul(&a(2)).add(&q.mul(&a(3))))
            .sub(&q.mul(&a(2)).mul(&a(0)))
            .sub(&a(4));
        let t18 = a(2)
            .mul(&three.neg().mul(&a(1)).add(&qmq2.mul(&a(0))))
            .sub(&q2.mul(&a(0)).mul(&a(3)))
            .sub(&a(5));
        let t25 = q2mq
            .mul(&l.l112.mul(&a(1)).sub(&l.l122.mul(&a(2))))
            .add(&a(1).mul(&one.sub(q).mul(&a(2)).add(&two.mul(&q2).mul(&a(3)))))
            .sub(&a(0).mul(&a(2).sub(&q.mul(&a(3)))))
            .sub(&q.mul(&a(4)))
            .add(&a(5));
        let t26 = qmq2
            .mul(&l.l112.mul(&a(0)).add(&l.l122.mul(&a(3))))
            .sub(&a(2).mul(&three.mul(&l.l122).add(&one.sub(&q2).mul(&a(0)))))
            .add(&two.mul(&q).mul(&a(0)).mul(&a(3)))
            .sub(&q2.mul(&a(5)));
        let t27 = q2mq
            .mul(&l.l1.mul(&a(1)).sub(&l.l112.mul(&a(2))))
            .sub(&a(2).mul(&one.sub(q).mul(&a(2)).add(&three.mul(&q2).mul(&a(3)))))
            .sub(&q.mul(&a(3).pow(2).unwrap()))
            .sub(&a(7));
        let t28 = three
            .mul(&l.l1)
            .mul(&a(1))
            .add(&q2mq.mul(&l.l1).mul(&a(0)))
            .add(&q2mq.mul(&l.l112).mul(&a(3)))
            .sub(&q.mul(&a(3).pow(2).unwrap()))
            .sub(&q.mul(&a(7)));

        let cells: [(Mono, Mono, Cyclotomic, bool); 16] = [
            (x2, Mono::new(1, 0, 1), t12, false),
            (x2, Mono::new(0, 1, 0), t13, false),
            (x2, Mono::new(0, 0, 2), t14, false),
            (x2, Mono::new(2, 1, 1), t15, false),
            (x2, Mono::new(1, 2, 0), t16, true),
            (x2, Mono::new(1, 1, 2), t17, true),
            (x2, Mono::new(0, 2, 1), t18, true),
            (x1, Mono::new(2, 0, 0), t21, true),
            (x1, Mono::new(1, 0, 1), t22, false),
            (x1, Mono::new(0, 1, 0), t23, true),
            (x1, Mono::new(2, 1, 1), t25, false),
            (x1, Mono::new(1, 2, 0), t26, true),
            (x1, Mono::new(1, 1, 2), t27, true),
            (x1, Mono::new(0, 2, 1), t28, true),
            (x2, Mono::new(2, 0, 0), m.scalar_zero(), true),
            (x1, Mono::new(0, 0, 2), m.scalar_zero(), true),
        ];
        for (row, col, t, add_sigma) in cells {
            let mut expected = t;
            if add_sigma {
                expected = expected.add(&sigma.value(&m, &row, &col));
            }
            assert_eq!(orb.value(&m, &row, &col), expected, "orbit cell ({row}, {col})");
        }
    }

    #[test]
    fn orbit_composition_and_inverse() {
        let (m, _, sigma) = atyp();
        let c1: [Cyclotomic; 8] =
            std::array::from_fn(|i| Cyclotomic::from_integer(3, [1, 0, 2, 0, 3, 0, 0, 1][i]));
        let c2: [Cyclotomic; 8] =
            std::array::from_fn(|i| Cyclotomic::from_integer(3, [0, 2, 0, 1, 0, 0, 4, 0][i]));
        let a1 = m.alpha_from_params(&c1).unwrap();
        let a2 = m.alpha_from_params(&c2).unwrap();
        let lhs = m.orbit_act(&a1, &m.orbit_act(&a2, &sigma).unwrap()).unwrap();
        let rhs = m
            .orbit_act(&m.functional_convolve(&a1, &a2), &sigma)
            .unwrap();
        assert_eq!(lhs, rhs);
        for a in [&a1, &a2] {
            let inv = m.functional_inverse(a).unwrap();
            let back = m.orbit_act(a, &m.orbit_act(&inv, &sigma).unwrap()).unwrap();
            assert_eq!(back, sigma);
        }
    }

    #[test]
    fn orbit_preserves_unitality_and_invariance() {
        let (m, _, sigma) = atyp();
        let c: [Cyclotomic; 8] =
            std::array::from_fn(|i| Cyclotomic::from_integer(3, [1, 0, 2, 0, 3, 0, 0, 1][i]));
        let alpha = m.alpha_from_params(&c).unwrap();
        let orb = m.orbit_act(&alpha, &sigma).unwrap();
        for b in m.basis() {
            let expected = if b.is_unit() { m.scalar_one() } else { m.scalar_zero() };
            assert_eq!(orb.value(&m, &Mono::UNIT, &b), expected);
            assert_eq!(orb.value(&m, &b, &Mono::UNIT), expected);
        }
        // the orbit stays H-invariant: support pairs have jointly trivial weight
        for ((a, b), _) in orb.values.iter() {
            let d1 = a.multidegree();
            let d2 = b.multidegree();
            assert!(super::weight_trivial(&m, (d1.0 + d2.0, d1.1 + d2.1)));
        }
    }

    #[test]
    fn table_roundtrip_and_emission() {
        let (m, _, sigma) = atyp();
        let table = CocycleTable::from_bifunctional(&m, &sigma);
        let json = serde_json::to_string(&table).unwrap();
        let back: CocycleTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, table);
        assert_eq!(back.to_bifunctional(), sigma);
        let csv = table.to_csv();
        assert!(csv.starts_with("left,right,value\n"));
        assert_eq!(csv.lines().count(), table.entries.len() + 1);
        let md = table.to_markdown();
        assert!(md.starts_with("| left | right | value |"));
    }
}
