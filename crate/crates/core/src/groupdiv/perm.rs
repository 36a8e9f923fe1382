use std::fmt;

use super::GroupError;

/// Permutation of `{0, .., degree - 1}` stored as its image list.
///
/// Products read left to right: `a.then(b)` applies `a` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            match seen.get_mut(i as usize) {
                Some(s) if !*s => *s = true,
                _ => {
                    return Err(GroupError::Parse(format!(
                        "{images:?} is not a permutation"
                    )))
                }
            }
        }
        Ok(Perm(images))
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (pos, &a) in cycle.iter().enumerate() {
                let b = cycle[(pos + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(GroupError::Parse(format!(
                        "point {} outside domain of size {degree}",
                        a.max(b) + 1
                    )));
                }
                if moved[a as usize] {
                    return Err(GroupError::Parse(format!(
                        "point {} repeated in cycles",
                        a + 1
                    )));
                }
                moved[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Ok(Perm(images))
    }

    /// Parses cycle notation with 1-based points, e.g. `(1 2 3)(4 5)`.
    /// Commas are accepted as separators; `()` is the identity.
    pub fn parse(degree: usize, s: &str) -> Result<Self, GroupError> {
        let s = s.trim();
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| GroupError::Parse(format!("malformed cycle notation '{s}'")))?;
            let points = inner
                .0
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<u32>() {
                    Ok(p) if p >= 1 => Ok(p - 1),
                    _ => Err(GroupError::Parse(format!("bad point '{t}' in '{s}'"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = inner.1.trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.0[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| other.0[a as usize] == self.0[b as usize])
    }

    /// Disjoint cycles of length at least two, 0-based, each starting at its
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut next = self.0[start];
            while next as usize != start {
                seen[next as usize] = true;
                cycle.push(next);
                next = self.0[next as usize];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}
