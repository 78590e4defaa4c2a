use core::fmt;

/// A diagonal `(a, b)` of the `(n+3)`-gon, `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcLabel {
    pub a: usize,
    pub b: usize,
}

impl ArcLabel {
    /// The vertex `(l, s)` of ZA_n labels the arc `{s, s + l + 1}` modulo `n + 3`,
    /// a labelling invariant under `F = tau^-1 Sigma`.
    pub(crate) fn of_vertex(n: usize, (l, s): (i64, i64)) -> ArcLabel {
        let m = (n + 3) as i64;
        let x = s.rem_euclid(m) as usize;
        let y = (s + l + 1).rem_euclid(m) as usize;
        ArcLabel {
            a: x.min(y),
            b: x.max(y),
        }
    }

    /// Parses `"(a,b)"`.
    pub fn parse(text: &str) -> Option<ArcLabel> {
        let inner = text.trim().strip_prefix('(')?.strip_suffix(')')?;
        let (a, b) = inner.split_once(',')?;
        let (a, b): (usize, usize) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
        Some(ArcLabel {
            a: a.min(b),
            b: a.max(b),
        })
    }
}

impl fmt::Display for ArcLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Whether two diagonals cross in their interiors.
pub fn arcs_cross(x: ArcLabel, y: ArcLabel) -> bool {
    let ends = [x.a, x.b, y.a, y.b];
    if (0..4).any(|i| (i + 1..4).any(|j| ends[i] == ends[j])) {
        return false;
    }
    let inside = |p: usize| x.a < p && p < x.b;
    inside(y.a) != inside(y.b)
}
