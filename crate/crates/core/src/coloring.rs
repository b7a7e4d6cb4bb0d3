use serde::{Deserialize, Serialize};

use crate::error::ParamError;
use crate::subset::{binomial, colex_subsets, rank_slice, FiniteSet};

/// A total coloring of `[m]^n` into `c` colors, stored in colex order.
///
/// Serialized as `{"m":6,"n":2,"c":2,"colors":[...]}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Coloring {
    m: u32,
    n: usize,
    c: u32,
    colors: Vec<u32>,
}

#[derive(Deserialize)]
struct RawColoring {
    m: u32,
    n: usize,
    c: u32,
    colors: Vec<u32>,
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawColoring::deserialize(d)?;
        Coloring::new(raw.m, raw.n, raw.c, raw.colors).map_err(serde::de::Error::custom)
    }
}

impl Coloring {
    pub fn new(m: u32, n: usize, c: u32, colors: Vec<u32>) -> Result<Self, ParamError> {
        let expected = subset_count(m, n)?;
        if colors.len() as u64 != expected {
            return Err(ParamError::ColoringLength {
                m,
                n,
                expected,
                found: colors.len(),
            });
        }
        if let Some((position, &color)) = colors.iter().enumerate().find(|(_, &x)| x >= c) {
            return Err(ParamError::ColorOutOfRange { position, color, c });
        }
        Ok(Coloring { m, n, c, colors })
    }

    /// Colors every n-subset by `f`, visiting subsets in colex order.
    pub fn from_fn<F>(m: u32, n: usize, c: u32, mut f: F) -> Result<Self, ParamError>
    where
        F: FnMut(&[u32]) -> u32,
    {
        subset_count(m, n)?;
        let colors = colex_subsets(m, n).iter().map(|s| f(s)).collect();
        Coloring::new(m, n, c, colors)
    }

    pub fn constant(m: u32, n: usize, c: u32, color: u32) -> Result<Self, ParamError> {
        let len = subset_count(m, n)? as usize;
        Coloring::new(m, n, c, vec![color; len])
    }

    pub(crate) fn from_parts_unchecked(m: u32, n: usize, c: u32, colors: Vec<u32>) -> Self {
        debug_assert_eq!(colors.len() as u128, binomial(u64::from(m), n as u64));
        Coloring { m, n, c, colors }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Color of a sorted n-subset of `{0..m-1}`.
    pub fn color_of(&self, sorted: &[u32]) -> u32 {
        self.colors[rank_slice(sorted) as usize]
    }

    pub fn color_of_set(&self, s: &FiniteSet) -> Result<u32, ParamError> {
        if s.len() != self.n {
            return Err(ParamError::SizeMismatch {
                expected: self.n,
                found: s.len(),
            });
        }
        if s.maximum().is_some_and(|x| x >= self.m) {
            return Err(ParamError::Invalid(format!("{s} is not a subset of {}", self.m)));
        }
        Ok(self.color_of(s.elements()))
    }

    /// Restriction to `[l]^n` for `l <= m`; a prefix in colex order.
    pub fn restrict(&self, l: u32) -> Result<Coloring, ParamError> {
        if l > self.m {
            return Err(ParamError::Incompatible(format!(
                "cannot restrict a coloring of [{}]^{} to [{l}]^{}",
                self.m, self.n, self.n
            )));
        }
        let len = subset_count(l, self.n)? as usize;
        Ok(Coloring {
            m: l,
            n: self.n,
            c: self.c,
            colors: self.colors[..len].to_vec(),
        })
    }

    /// Relabels colors in order of first appearance along the colex order.
    pub fn canonical(&self) -> Coloring {
        let mut map = vec![u32::MAX; self.c as usize];
        let mut next = 0;
        let colors = self
            .colors
            .iter()
            .map(|&x| {
                let slot = &mut map[x as usize];
                if *slot == u32::MAX {
                    *slot = next;
                    next += 1;
                }
                *slot
            })
            .collect();
        Coloring { colors, ..*self }
    }

    pub fn is_canonical(&self) -> bool {
        let mut seen = 0u32;
        for &x in &self.colors {
            if x > seen {
                return false;
            }
            if x == seen {
                seen += 1;
            }
        }
        true
    }

    /// Applies a permutation of color names.
    pub fn permute_colors(&self, perm: &[u32]) -> Result<Coloring, ParamError> {
        if perm.len() != self.c as usize {
            return Err(ParamError::Incompatible(format!(
                "permutation of length {} for {} colors",
                perm.len(),
                self.c
            )));
        }
        let colors = self.colors.iter().map(|&x| perm[x as usize]).collect();
        Coloring::new(self.m, self.n, self.c, colors)
    }
}

impl Coloring {
    /// Quadratic-residue coloring of `[p]^2`: `{i, j}` gets color 1 when
    /// `j - i` is a nonzero square mod `p`.
    pub fn quadratic_residue(p: u32) -> Result<Coloring, ParamError> {
        let squares: Vec<bool> = {
            let mut sq = vec![false; p as usize];
            for x in 1..p {
                sq[((u64::from(x) * u64::from(x)) % u64::from(p)) as usize] = true;
            }
            sq
        };
        Coloring::from_fn(p, 2, 2, |s| u32::from(squares[(s[1] - s[0]) as usize]))
    }
}

pub(crate) fn subset_count(m: u32, n: usize) -> Result<u64, ParamError> {
    let count = binomial(u64::from(m), n as u64);
    u64::try_from(count)
        .ok()
        .filter(|&c| c <= 1 << 32)
        .ok_or_else(|| ParamError::Invalid(format!("C({m},{n}) is too large to materialize")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_length_and_range() {
        assert!(Coloring::new(3, 2, 2, vec![0, 1]).is_err());
        assert!(Coloring::new(3, 2, 2, vec![0, 1, 2]).is_err());
        assert!(Coloring::new(3, 2, 2, vec![0, 1, 1]).is_ok());
        // n > m: the only valid coloring is empty
        assert!(Coloring::new(2, 3, 2, vec![]).is_ok());
    }

    #[test]
    fn canonical_relabels_by_first_appearance() {
        let p = Coloring::new(4, 1, 3, vec![2, 2, 0, 1]).unwrap();
        let c = p.canonical();
        assert_eq!(c.colors(), &[0, 0, 1, 2]);
        assert!(c.is_canonical());
        assert!(!p.is_canonical());
    }

    #[test]
    fn restriction_is_a_prefix() {
        let p = Coloring::from_fn(5, 2, 2, |s| (s[0] + s[1]) % 2).unwrap();
        let q = p.restrict(4).unwrap();
        assert_eq!(q.colors(), &p.colors()[..6]);
        assert!(p.restrict(6).is_err());
    }

    #[test]
    fn json_shape() {
        let p = Coloring::new(3, 2, 2, vec![0, 1, 1]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"m":3,"n":2,"c":2,"colors":[0,1,1]}"#);
        let back: Coloring = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Coloring>(r#"{"m":3,"n":2,"c":2,"colors":[0]}"#).is_err());
    }

    #[test]
    fn quadratic_residue_is_symmetric_mod_17() {
        let p = Coloring::quadratic_residue(17).unwrap();
        assert_eq!(p.colors().len(), 136);
        // 1, 2, 4, 8, 9, 13, 15, 16 are the nonzero squares mod 17
        assert_eq!(p.color_of(&[0, 1]), 1);
        assert_eq!(p.color_of(&[0, 3]), 0);
        assert_eq!(p.color_of(&[3, 16]), 1);
    }
}
