use crate::{PeriodError, C64};

/// Distance from `c` to the segment `[a, b]`.
pub fn segment_distance(a: C64, b: C64, c: C64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (c - a).norm();
    }
    let t = ((c - a) * d.conj()).re / len2;
    (a + d * t.clamp(0.0, 1.0) - c).norm()
}

/// A piecewise linear path in `C` with the punctures it must avoid.
///
/// An endpoint lying on a puncture has to be tangential. The tangential
/// base point there is the vector `start_tangent` (leaving the start) or
/// `end_tangent` (arriving at the end); both are `1` for paths built here
/// and become `-1` under reversal.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSpec {
    vertices: Vec<C64>,
    punctures: Vec<C64>,
    tangential: (bool, bool),
    start_tangent: C64,
    end_tangent: C64,
}

impl PathSpec {
    pub fn new(
        vertices: Vec<C64>,
        punctures: Vec<C64>,
        tangential: (bool, bool),
    ) -> Result<Self, PeriodError> {
        let p = PathSpec {
            vertices,
            punctures,
            tangential,
            start_tangent: C64::new(1.0, 0.0),
            end_tangent: C64::new(1.0, 0.0),
        };
        p.validate()?;
        Ok(p)
    }

    /// The segment from `a` to `b`, tangential wherever an endpoint is a puncture.
    pub fn straight(a: C64, b: C64, punctures: Vec<C64>) -> Result<Self, PeriodError> {
        let flags = (punctures.contains(&a), punctures.contains(&b));
        Self::new(vec![a, b], punctures, flags)
    }

    /// The path that stays at `a`.
    pub fn constant(a: C64, punctures: Vec<C64>) -> Result<Self, PeriodError> {
        let flag = punctures.contains(&a);
        Self::new(vec![a], punctures, (flag, flag))
    }

    /// `[0, 1]` with punctures `{0, 1}` and tangential endpoints.
    pub fn unit_interval() -> Self {
        Self::straight(C64::new(0.0, 0.0), C64::new(1.0, 0.0), vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)])
            .expect("valid")
    }

    fn scale(&self) -> f64 {
        self.vertices
            .iter()
            .chain(&self.punctures)
            .map(|z| z.norm())
            .fold(1.0, f64::max)
    }

    fn validate(&self) -> Result<(), PeriodError> {
        let v = &self.vertices;
        if v.is_empty() {
            return Err(PeriodError::InvalidPath("no vertices".into()));
        }
        if v.iter().chain(&self.punctures).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(PeriodError::InvalidPath("non-finite coordinate".into()));
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(PeriodError::InvalidPath("repeated consecutive vertex".into()));
        }
        let tiny = 1e-13 * self.scale();
        let last = v.len() - 1;
        for &c in &self.punctures {
            if last == 0 && (c - v[0]).norm() <= tiny && !(self.tangential.0 && self.tangential.1) {
                return Err(PeriodError::InvalidPath(format!("{c} is a puncture but not tangential")));
            }
            for (i, w) in v.windows(2).enumerate() {
                let d = segment_distance(w[0], w[1], c);
                let at_start = i == 0 && (c - w[0]).norm() <= tiny;
                let at_end = i + 1 == last && (c - w[1]).norm() <= tiny;
                if at_start || at_end {
                    let flagged = if at_start { self.tangential.0 } else { self.tangential.1 };
                    if !flagged {
                        return Err(PeriodError::InvalidPath(format!(
                            "endpoint {c} is a puncture but not tangential"
                        )));
                    }
                    continue;
                }
                if d <= tiny {
                    return Err(PeriodError::PathHitsPuncture(c.to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[C64] {
        &self.vertices
    }

    pub fn punctures(&self) -> &[C64] {
        &self.punctures
    }

    pub fn start(&self) -> C64 {
        self.vertices[0]
    }

    pub fn end(&self) -> C64 {
        *self.vertices.last().expect("nonempty")
    }

    pub fn tangential(&self) -> (bool, bool) {
        self.tangential
    }

    pub fn start_tangent(&self) -> C64 {
        self.start_tangent
    }

    pub fn end_tangent(&self) -> C64 {
        self.end_tangent
    }

    pub fn segments(&self) -> impl Iterator<Item = (C64, C64)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    /// The same path traversed backwards.
    pub fn reversed(&self) -> PathSpec {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        PathSpec {
            vertices,
            punctures: self.punctures.clone(),
            tangential: (self.tangential.1, self.tangential.0),
            start_tangent: -self.end_tangent,
            end_tangent: -self.start_tangent,
        }
    }

    /// Replaces each tangential endpoint `p` by `p + ε·v` at the start or
    /// `p - ε·v` at the end, `v` the tangent vector there.
    pub fn truncated(&self, eps: f64) -> Result<PathSpec, PeriodError> {
        let mut vertices = self.vertices.clone();
        if self.tangential.0 {
            vertices[0] += self.start_tangent * eps;
        }
        if self.tangential.1 {
            let last = vertices.len() - 1;
            vertices[last] -= self.end_tangent * eps;
        }
        let p = PathSpec {
            vertices,
            punctures: self.punctures.clone(),
            tangential: (false, false),
            start_tangent: self.start_tangent,
            end_tangent: self.end_tangent,
        };
        p.validate()?;
        Ok(p)
    }

    /// Replaces the truncated endpoints by arbitrary nearby points, for
    /// probing parametrization independence of the ε-method.
    pub fn with_endpoints(&self, start: C64, end: C64) -> Result<PathSpec, PeriodError> {
        let mut vertices = self.vertices.clone();
        let last = vertices.len() - 1;
        vertices[0] = start;
        vertices[last] = end;
        let p = PathSpec {
            vertices,
            tangential: (false, false),
            ..self.clone()
        };
        p.validate()?;
        Ok(p)
    }
}
