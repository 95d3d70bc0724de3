//! Integral group algebra Z P of a finite abelian p-group and the radical power split.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::AbelianPGroup;
use crate::error::{WbError, WbResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElem {
    pub group: AbelianPGroup,
    /// Coefficient of each group element, indexed by AbelianPGroup::index.
    pub coeffs: Vec<BigInt>,
}

impl GroupAlgebraElem {
    pub fn zero(group: &AbelianPGroup) -> Self {
        GroupAlgebraElem {
            group: group.clone(),
            coeffs: vec![BigInt::zero(); group.order() as usize],
        }
    }

    pub fn from_i64(group: &AbelianPGroup, c: &[i64]) -> Self {
        assert_eq!(c.len(), group.order() as usize);
        GroupAlgebraElem {
            group: group.clone(),
            coeffs: c.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    /// 1 - g
    pub fn one_minus(group: &AbelianPGroup, g: &[u64]) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[0] += 1;
        x.coeffs[group.index(g)] -= 1;
        x
    }

    pub fn augmentation(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let (Some(a), Some(b)) = (self.small(), other.small()) {
            if let Some(c) = self.mul_i128(&a, &b) {
                return GroupAlgebraElem {
                    group: self.group.clone(),
                    coeffs: c.into_iter().map(BigInt::from).collect(),
                };
            }
        }
        let g = &self.group;
        let els: Vec<_> = g.elements().collect();
        let mut out = vec![BigInt::zero(); els.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[g.index(&g.add(&els[i], &els[j]))] += a * b;
            }
        }
        GroupAlgebraElem {
            group: g.clone(),
            coeffs: out,
        }
    }

    fn small(&self) -> Option<Vec<i128>> {
        self.coeffs.iter().map(|c| c.to_i128()).collect()
    }

    fn mul_i128(&self, a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
        let g = &self.group;
        let els: Vec<_> = g.elements().collect();
        let mut out = vec![0i128; els.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let k = g.index(&g.add(&els[i], &els[j]));
                out[k] = out[k].checked_add(x.checked_mul(y)?)?;
            }
        }
        Some(out)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut r = Self::zero(&self.group);
        r.coeffs[0] = BigInt::from(1);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Coordinates in J/J^2 on the basis 1 - x_i, reduced mod p:
    /// x = sum a_g g with zero augmentation equals -sum a_g (1 - g), and 1 - g = sum g_i (1 - x_i) mod J^2.
    pub fn jj2_coords_mod_p(&self) -> Vec<u64> {
        let g = &self.group;
        let p = BigInt::from(g.p);
        let mut out = vec![BigInt::zero(); g.rank()];
        for (idx, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let el = g.element(idx);
            for (i, &gi) in el.iter().enumerate() {
                out[i] -= a * BigInt::from(gi);
            }
        }
        out.iter()
            .zip(&g.orders)
            .map(|(c, &n)| if n == 0 { 0 } else { c.mod_floor(&p).to_u64().unwrap() })
            .collect()
    }

    /// Lies in J_{O,2}: reduction mod p is in J^2(kP).
    pub fn in_j2(&self) -> bool {
        self.jj2_coords_mod_p().iter().all(|&c| c == 0)
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SplitCertificate {
    pub power: u64,
    /// For p = 2, n = 1: whether x and y lie outside J_{O,2}.
    pub x_outside_j2: Option<bool>,
    pub y_outside_j2: Option<bool>,
}

/// Compute y = x^{p^n} / p, checking divisibility and augmentation.
pub fn radical_power_split(x: &GroupAlgebraElem, n: u32) -> WbResult<(GroupAlgebraElem, SplitCertificate)> {
    let g = &x.group;
    if !x.augmentation().is_zero() {
        return Err(WbError::spec("radical_power_split: augmentation of x is not zero"));
    }
    let pn = g.p.pow(n);
    // the divisibility needs x_i^{p^n} = 1 for every generator
    if pn < g.exponent() {
        return Err(WbError::spec(format!(
            "p^n = {pn} is below the exponent {} of P",
            g.exponent()
        )));
    }
    let xp = x.pow(pn);
    let p = BigInt::from(g.p);
    let mut y = GroupAlgebraElem::zero(g);
    for (i, c) in xp.coeffs.iter().enumerate() {
        let (q, r) = c.div_mod_floor(&p);
        if !r.is_zero() {
            return Err(WbError::verification(
                "tech",
                format!("coefficient {c} of x^{pn} is not divisible by {}", g.p),
            ));
        }
        y.coeffs[i] = q;
    }
    if !y.augmentation().is_zero() {
        return Err(WbError::verification("tech", "x^{p^n}/p has nonzero augmentation"));
    }
    let (xo, yo) = if g.p == 2 && n == 1 {
        (Some(!x.in_j2()), Some(!y.in_j2()))
    } else {
        (None, None)
    };
    if xo == Some(true) && yo == Some(false) {
        return Err(WbError::verification(
            "tech",
            "x lies outside J_{O,2} but x^2/2 lies inside",
        ));
    }
    Ok((
        y,
        SplitCertificate {
            power: pn,
            x_outside_j2: xo,
            y_outside_j2: yo,
        },
    ))
}

/// A random element of J_O(P) with coefficients in [-bound, bound].
pub fn random_radical_element<R: rand::Rng>(g: &AbelianPGroup, bound: i64, rng: &mut R) -> GroupAlgebraElem {
    let n = g.order() as usize;
    let mut c: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
    let s: i64 = c.iter().sum();
    c[0] -= s;
    GroupAlgebraElem::from_i64(g, &c)
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct TechSummary {
    pub samples: usize,
    pub n: u32,
    /// p = 2 samples taken outside J_{O,2} (checked with n = 1).
    pub outside_j2: usize,
}

/// Least n with p^n >= exp(P).
pub fn tech_exponent(g: &AbelianPGroup) -> u32 {
    g.orders.iter().copied().max().unwrap_or(0).max(1)
}

/// Split `samples` random radical elements; for p = 2 and elementary abelian P
/// also check the n = 1 statement on every sample.
pub fn verify_tech<R: rand::Rng>(g: &AbelianPGroup, samples: usize, rng: &mut R) -> WbResult<TechSummary> {
    let n = tech_exponent(g);
    let mut out = TechSummary {
        samples,
        n,
        outside_j2: 0,
    };
    for _ in 0..samples {
        let x = random_radical_element(g, 3, rng);
        radical_power_split(&x, n)?;
        if g.p == 2 && n == 1 && !x.in_j2() {
            out.outside_j2 += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn c2_square() {
        let g = AbelianPGroup::new(2, vec![1]);
        let x = GroupAlgebraElem::one_minus(&g, &[1]);
        let (y, cert) = radical_power_split(&x, 1).unwrap();
        assert_eq!(y, x);
        assert_eq!(cert.x_outside_j2, Some(true));
        assert_eq!(cert.y_outside_j2, Some(true));
    }

    #[test]
    fn zero_and_c3_cube() {
        let g = AbelianPGroup::new(3, vec![1]);
        let (y, _) = radical_power_split(&GroupAlgebraElem::zero(&g), 1).unwrap();
        assert!(y.is_zero());
        // (1-g)^3 = 1 - 3g + 3g^2 - g^3 = -3g + 3g^2 in Z[C_3]
        let x = GroupAlgebraElem::one_minus(&g, &[1]);
        let x3 = x.pow(3);
        assert_eq!(x3, GroupAlgebraElem::from_i64(&g, &[0, -3, 3]));
        let (y, _) = radical_power_split(&x, 1).unwrap();
        assert_eq!(y, GroupAlgebraElem::from_i64(&g, &[0, -1, 1]));
        assert!(y.augmentation().is_zero());
    }

    #[test]
    fn rejects_nonzero_augmentation() {
        let g = AbelianPGroup::new(2, vec![1]);
        let x = GroupAlgebraElem::from_i64(&g, &[1, 0]);
        assert!(radical_power_split(&x, 1).is_err());
    }

    #[test]
    fn jj2_coordinates() {
        let g = AbelianPGroup::new(2, vec![1, 1]);
        let x = GroupAlgebraElem::one_minus(&g, &[1, 1]);
        assert_eq!(x.jj2_coords_mod_p(), vec![1, 1]);
        let sq = GroupAlgebraElem::one_minus(&g, &[1, 0]).mul(&GroupAlgebraElem::one_minus(&g, &[0, 1]));
        assert!(sq.in_j2());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn split_holds_on_c4xc2(c in proptest::collection::vec(-3i64..=3, 8), n in 2u32..=3) {
            let g = AbelianPGroup::new(2, vec![2, 1]);
            let mut c = c;
            let s: i64 = c.iter().sum();
            c[0] -= s;
            let x = GroupAlgebraElem::from_i64(&g, &c);
            let (y, cert) = radical_power_split(&x, n).unwrap();
            prop_assert!(y.augmentation().is_zero());
            prop_assert_eq!(cert.x_outside_j2, None);
        }

        #[test]
        fn square_keeps_j2_pattern(c in proptest::collection::vec(-3i64..=3, 8)) {
            let g = AbelianPGroup::new(2, vec![1, 1, 1]);
            let mut c = c;
            let s: i64 = c.iter().sum();
            c[0] -= s;
            let x = GroupAlgebraElem::from_i64(&g, &c);
            let (y, cert) = radical_power_split(&x, 1).unwrap();
            prop_assert_eq!(cert.x_outside_j2, cert.y_outside_j2);
            // the J/J^2 coordinates mod 2 agree, since a^2 = a in F_2
            prop_assert_eq!(x.jj2_coords_mod_p(), y.jj2_coords_mod_p());
        }
    }

    #[test]
    fn exponent_too_large_for_power() {
        let g = AbelianPGroup::new(2, vec![2]);
        let x = GroupAlgebraElem::one_minus(&g, &[1]);
        // (1 - g)^2 = 1 - 2g + g^2 is not in 2 Z[C_4]
        assert_eq!(x.pow(2).coeffs[2], BigInt::from(1));
        assert!(matches!(radical_power_split(&x, 1), Err(WbError::InvalidSpec(_))));
        assert!(radical_power_split(&x, 2).is_ok());
    }
}
