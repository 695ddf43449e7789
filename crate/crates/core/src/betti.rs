//! Betti numbers, Tate-resolution shapes and cohomology tables of `F_U`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graded::GradedFreeModule;
use crate::poly::binomial;

/// Graded shape of `F_U` on a genus-`g` hyperelliptic curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuShape {
    pub genus: u32,
    /// Generators of `H^0_*(F_U)`: degree `i` with multiplicity `C(g+2, 2i)`.
    pub even: GradedFreeModule,
    /// Generators of `H^0_*(F_U(p))`: degree `i` with multiplicity `C(g+2, 2i+1)`.
    pub odd: GradedFreeModule,
    pub rank: i64,
    pub degree: i64,
    pub direct_image_degree: i64,
}

pub fn fu_degrees(g: u32) -> FuShape {
    let n = g as u64 + 2;
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for i in 0..=n / 2 {
        for _ in 0..binomial(n, 2 * i) {
            even.push(i as i64);
        }
        for _ in 0..binomial(n, 2 * i + 1) {
            odd.push(i as i64);
        }
    }
    let even = GradedFreeModule::new(even);
    let odd = GradedFreeModule::new(odd);
    let rank = even.rank() as i64 / 2;
    let direct_image_degree = -even.degrees.iter().sum::<i64>();
    FuShape {
        genus: g,
        degree: direct_image_degree + rank * (g as i64 + 1),
        direct_image_degree,
        rank,
        even,
        odd,
    }
}

/// `a_i` of the linear strand: `a_{2p} = Σ (p-i+1) C(g+2, 2i)` and
/// `a_{2p+1} = Σ (p-i+1) C(g+2, 2i+1)`.
pub fn betti_number(g: u32, i: u32) -> u64 {
    let n = g as u64 + 2;
    let p = (i / 2) as u64;
    let parity = (i % 2) as u64;
    (0..=p).map(|k| (p - k + 1) * binomial(n, 2 * k + parity)).sum()
}

/// Two rows of optional entries printed with a leading `...` on the upper row
/// and a trailing `...` on the lower row. Missing entries print as blanks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoRowTable {
    pub upper: Vec<Option<u64>>,
    pub lower: Vec<Option<u64>>,
}

impl TwoRowTable {
    pub fn render(&self) -> String {
        let width = self
            .upper
            .iter()
            .chain(&self.lower)
            .flatten()
            .map(|v| format!("{v}").len())
            .max()
            .unwrap_or(1);
        let cols = self.upper.len().max(self.lower.len());
        let cell = |v: Option<&Option<u64>>| match v {
            Some(Some(x)) => format!("{x:>width$}"),
            _ => format!("{:>width$}", ""),
        };
        let mut top = vec![String::from("...")];
        let mut bottom = vec![String::from("   ")];
        for c in 0..cols {
            top.push(cell(self.upper.get(c)));
            bottom.push(cell(self.lower.get(c)));
        }
        top.push(String::from("   "));
        bottom.push(String::from("..."));
        let mut out = String::new();
        for row in [top, bottom] {
            out.push_str(row.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// Two-strand Betti table with `b_{ℓ-i} = a_i` on the overlap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub overlap: usize,
    /// `a_0, a_1, ...` of the linear strand.
    pub linear: Vec<u64>,
}

impl BettiTable {
    /// `b_j = a_{ℓ-j}` for `j <= ℓ`.
    pub fn quadratic(&self, j: i64) -> Option<u64> {
        let i = self.overlap as i64 - j;
        (i >= 0).then(|| self.linear.get(i as usize).copied()).flatten()
    }

    /// Window `b_{-1} .. b_ℓ` above `a_0 .. a_{ℓ+2}`, with `a_i` under `b_{i+1}`.
    pub fn to_two_row(&self) -> TwoRowTable {
        let l = self.overlap;
        let cols = l + 5;
        let mut upper = vec![None; cols];
        let mut lower = vec![None; cols];
        for j in -1..=l as i64 {
            upper[(j + 1) as usize] = self.quadratic(j);
        }
        for i in 0..=l + 2 {
            lower[i + 2] = self.linear.get(i).copied();
        }
        TwoRowTable { upper, lower }
    }

    pub fn strand_duality_holds(&self) -> bool {
        (0..=self.overlap).all(|i| self.quadratic((self.overlap - i) as i64) == self.linear.get(i).copied())
    }
}

pub fn tate_shape_pu(g: u32) -> BettiTable {
    let overlap = g as usize;
    BettiTable {
        overlap,
        linear: (0..=overlap as u32 + 3).map(|i| betti_number(g, i)).collect(),
    }
}

/// Cohomology of the twists `F(jp)` for `j` in a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub first_twist: i64,
    pub h0: Vec<u64>,
    pub h1: Vec<u64>,
}

impl CohomologyTable {
    pub fn last_twist(&self) -> i64 {
        self.first_twist + self.h0.len() as i64 - 1
    }

    pub fn h0_at(&self, j: i64) -> Option<u64> {
        let k = j - self.first_twist;
        (k >= 0).then(|| self.h0.get(k as usize).copied()).flatten()
    }

    pub fn h1_at(&self, j: i64) -> Option<u64> {
        let k = j - self.first_twist;
        (k >= 0).then(|| self.h1.get(k as usize).copied()).flatten()
    }

    /// Columns `j = first .. last-1`: `h^1(F(jp))` above `h^0(F((j+1)p))`; zeros are blank.
    pub fn to_two_row(&self) -> TwoRowTable {
        let nz = |v: Option<u64>| v.filter(|x| *x != 0);
        let cols = self.h0.len().saturating_sub(1);
        TwoRowTable {
            upper: (0..cols).map(|k| nz(Some(self.h1[k]))).collect(),
            lower: (0..cols).map(|k| nz(Some(self.h0[k + 1]))).collect(),
        }
    }

    /// Entrywise sum of `self` and `other` shifted by `shift` twists:
    /// the table of `F ⊕ F(shift·p)` when `other` is the table of `F`.
    pub fn add_shifted(&self, other: &CohomologyTable, shift: i64) -> Option<CohomologyTable> {
        let h0 = (self.first_twist..=self.last_twist())
            .map(|j| Some(self.h0_at(j)? + other.h0_at(j + shift)?))
            .collect::<Option<Vec<_>>>()?;
        let h1 = (self.first_twist..=self.last_twist())
            .map(|j| Some(self.h1_at(j)? + other.h1_at(j + shift)?))
            .collect::<Option<Vec<_>>>()?;
        Some(CohomologyTable {
            first_twist: self.first_twist,
            h0,
            h1,
        })
    }
}

/// Euler characteristic of a bundle of the given rank and degree on a genus-`g` curve.
pub fn riemann_roch(rank: i64, degree: i64, g: u32) -> i64 {
    degree + rank * (1 - g as i64)
}

/// Cohomology table of `F_U` for twists `first..=last`, from generator degrees and
/// Riemann–Roch alone.
pub fn fu_cohomology_table(g: u32, first: i64, last: i64) -> CohomologyTable {
    let shape = fu_degrees(g);
    let mut h0 = Vec::new();
    let mut h1 = Vec::new();
    for j in first..=last {
        let m = j.div_euclid(2);
        let module = if j.rem_euclid(2) == 0 { &shape.even } else { &shape.odd };
        let sections = module.hilbert(2, m) as i64;
        let chi = riemann_roch(shape.rank, shape.degree + j * shape.rank, g);
        h0.push(sections as u64);
        h1.push((sections - chi) as u64);
    }
    CohomologyTable {
        first_twist: first,
        h0,
        h1,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChiParity {
    /// `χ(G ⊗ F_U) = d 2^g + r g 2^(g-1) + r 2^g (1-g)`.
    pub chi: i64,
    /// Rank `r 2^(g-2)` of the induced sheaf on `X`, as a reduced fraction.
    pub rank_on_x: (u64, u64),
    /// Whether some degree `d` makes `χ` vanish.
    pub admissible: bool,
    /// That degree, when it exists.
    pub vanishing_degree: Option<i64>,
}

pub fn chi_and_parity(g: u32, r: u64, d: i64) -> ChiParity {
    let g64 = g as i64;
    let r64 = r as i64;
    let two_g = 1i64 << g;
    let chi = d * two_g + r64 * g64 * (two_g / 2) + r64 * two_g * (1 - g64);
    let rank_on_x = if g >= 2 {
        (r << (g - 2), 1)
    } else if r % 2 == 0 {
        (r / 2, 1)
    } else {
        (r, 2)
    };
    let admissible = (r64 * g64) % 2 == 0;
    ChiParity {
        chi,
        rank_on_x,
        admissible,
        vanishing_degree: admissible.then(|| -r64 * (2 - g64) / 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_shape() {
        let s = fu_degrees(1);
        assert_eq!(s.even.degrees, vec![0, 1, 1, 1]);
        assert_eq!((s.rank, s.degree), (2, 1));
    }

    #[test]
    fn first_betti_numbers() {
        for g in 1..9 {
            assert_eq!(betti_number(g, 0), 1);
            assert_eq!(betti_number(g, 1), g as u64 + 2);
        }
    }

    #[test]
    fn render_pads_and_trims() {
        let t = TwoRowTable {
            upper: vec![Some(10), Some(1), None],
            lower: vec![None, Some(3), Some(12)],
        };
        assert_eq!(t.render(), "... 10  1\n        3 12 ...\n");
    }

    #[test]
    fn chi_parity_examples() {
        let c = chi_and_parity(3, 1, 5);
        assert_eq!(c.chi, 8 * 5 - 4);
        assert!(!c.admissible);
        let c = chi_and_parity(2, 1, 0);
        assert_eq!(c.chi, 0);
        assert!(c.admissible);
        assert_eq!(chi_and_parity(1, 1, 0).rank_on_x, (1, 2));
    }
}
