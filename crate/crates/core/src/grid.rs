//! Rectangular sampling grids in (x₀, r).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// `n` equally spaced samples from `start` to `end` inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub end: f64,
    pub n: usize,
}

impl Axis {
    pub fn new(start: f64, end: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegenerateGrid("axis needs at least one sample".into()));
        }
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::DegenerateGrid("axis bounds must be finite".into()));
        }
        if n > 1 && start == end {
            return Err(Error::DegenerateGrid(format!("axis [{start}, {end}] has zero length with {n} samples")));
        }
        Ok(Self { start, end, n })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.start];
        }
        let step = (self.end - self.start) / (self.n - 1) as f64;
        (0..self.n).map(|k| self.start + step * k as f64).collect()
    }
}

/// Tensor grid over x₀ (or u) and r (or v).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid2 {
    pub x0: Axis,
    pub r: Axis,
}

impl Grid2 {
    pub fn new(x0: Axis, r: Axis) -> Self {
        Self { x0, r }
    }

    /// Row-major (x₀ outer, r inner) list of nodes.
    pub fn nodes(&self) -> Vec<(f64, f64)> {
        let rs = self.r.points();
        self.x0
            .points()
            .into_iter()
            .flat_map(|x| rs.iter().map(move |&r| (x, r)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.x0.n * self.r.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn parse_axis(text: &str) -> Result<Axis> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(Error::DegenerateGrid(format!("expected a:b:n, got {text:?}")));
    };
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::DegenerateGrid(format!("bad number {s:?} in {text:?}")))
    };
    let n = n
        .trim()
        .parse::<usize>()
        .map_err(|_| Error::DegenerateGrid(format!("bad sample count {n:?} in {text:?}")))?;
    Axis::new(num(a)?, num(b)?, n)
}

impl FromStr for Grid2 {
    type Err = Error;

    /// Parses `x0=a:b:n,r=a:b:n`.
    fn from_str(s: &str) -> Result<Self> {
        let mut x0 = None;
        let mut r = None;
        for field in s.split(',') {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::DegenerateGrid(format!("expected key=a:b:n, got {field:?}")))?;
            let slot = match key.trim() {
                "x0" => &mut x0,
                "r" => &mut r,
                other => return Err(Error::DegenerateGrid(format!("unknown grid axis {other:?}"))),
            };
            if slot.is_some() {
                return Err(Error::DegenerateGrid(format!("axis {key:?} given twice")));
            }
            *slot = Some(parse_axis(value)?);
        }
        let (Some(x0), Some(r)) = (x0, r) else {
            return Err(Error::DegenerateGrid("grid needs both x0 and r axes".into()));
        };
        if r.start < 0.0 || r.end < 0.0 {
            return Err(Error::DegenerateGrid("r must be nonnegative".into()));
        }
        Ok(Self { x0, r })
    }
}

impl fmt::Display for Grid2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x0={}:{}:{},r={}:{}:{}",
            self.x0.start, self.x0.end, self.x0.n, self.r.start, self.r.end, self.r.n
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_points() {
        let g: Grid2 = "x0=-1:1:11,r=0:2:5".parse().unwrap();
        assert_eq!(g.len(), 55);
        assert_eq!(g.x0.points()[5], 0.0);
        assert_eq!(g.r.points(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(g.to_string().parse::<Grid2>().unwrap(), g);
        let single: Grid2 = "r=1:1:1,x0=0.5:0.5:1".parse().unwrap();
        assert_eq!(single.nodes(), vec![(0.5, 1.0)]);
    }

    #[test]
    fn rejects_bad_grids() {
        for bad in ["x0=0:1:3", "x0=0:1:3,r=0:1", "x0=0:1:0,r=0:1:2", "x0=0:1:3,r=-1:1:3", "x0=0:0:3,r=0:1:3", "y=0:1:2,r=0:1:2"] {
            assert!(bad.parse::<Grid2>().is_err(), "{bad}");
        }
    }
}
