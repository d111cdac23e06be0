use std::f64::consts::TAU;

use num_complex::Complex64;

use super::angle::{Angle, BOUNDARY_SNAP};
use crate::{Error, Result};

/// Relative tolerance used when deciding that two adjacent pieces describe
/// the same exponential and may be merged.
const MERGE_TOL: f64 = 1e-12;

/// One angular piece `[start, end)` on which the field is
/// `amplitude · e^{i(gradient·φ + offset)}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub end: f64,
    pub gradient: f64,
    pub offset: f64,
    pub amplitude: Complex64,
}

impl Segment {
    pub fn new(start: f64, end: f64, gradient: f64, offset: f64, amplitude: Complex64) -> Self {
        Segment {
            start,
            end,
            gradient,
            offset,
            amplitude,
        }
    }

    /// `amplitude · e^{i·offset}`, the prefactor of `e^{i·gradient·φ}`.
    #[inline]
    pub fn coefficient(&self) -> Complex64 {
        self.amplitude * Complex64::cis(self.offset)
    }

    #[inline]
    pub fn value(&self, phi: f64) -> Complex64 {
        self.amplitude * Complex64::cis(self.gradient * phi + self.offset)
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.end - self.start
    }

    #[inline]
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.start + self.end)
    }

    fn same_exponential(&self, other: &Segment) -> bool {
        let dg = (self.gradient - other.gradient).abs();
        if dg > MERGE_TOL * self.gradient.abs().max(1.0) {
            return false;
        }
        let a = self.coefficient();
        (a - other.coefficient()).norm() <= MERGE_TOL * (1.0 + a.norm())
    }
}

/// A field on the unit circle that is a single complex exponential on each
/// of finitely many angular pieces. The pieces partition `[0, 2π)` in order.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseExpField {
    segments: Vec<Segment>,
}

impl PiecewiseExpField {
    /// Validates a user-supplied partition. Boundaries may be off by up to
    /// the boundary snap; they are then made exactly contiguous.
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidField("no segments".into()));
        }
        for (i, s) in segments.iter().enumerate() {
            let finite = [
                s.start,
                s.end,
                s.gradient,
                s.offset,
                s.amplitude.re,
                s.amplitude.im,
            ]
            .iter()
            .all(|v| v.is_finite());
            if !finite {
                return Err(Error::InvalidField(format!(
                    "segment {i} has a non-finite value"
                )));
            }
            if s.width() <= BOUNDARY_SNAP {
                return Err(Error::InvalidField(format!(
                    "segment {i} [{}, {}) is empty or reversed",
                    s.start, s.end
                )));
            }
        }
        if segments[0].start.abs() > BOUNDARY_SNAP {
            return Err(Error::InvalidField(format!(
                "first segment starts at {} instead of 0",
                segments[0].start
            )));
        }
        let last = segments[segments.len() - 1].end;
        if (last - TAU).abs() > BOUNDARY_SNAP {
            return Err(Error::InvalidField(format!(
                "last segment ends at {last} instead of 2π"
            )));
        }
        for (i, w) in segments.windows(2).enumerate() {
            if (w[0].end - w[1].start).abs() > BOUNDARY_SNAP {
                return Err(Error::InvalidField(format!(
                    "gap or overlap between segments {i} and {}",
                    i + 1
                )));
            }
        }
        let mut segments = segments;
        segments[0].start = 0.0;
        for i in 1..segments.len() {
            segments[i].start = segments[i - 1].end;
        }
        let n = segments.len();
        segments[n - 1].end = TAU;
        Ok(PiecewiseExpField { segments })
    }

    /// `amplitude · e^{i(gradient·φ + offset)}` on the whole circle.
    pub fn uniform(gradient: f64, offset: f64, amplitude: Complex64) -> Self {
        PiecewiseExpField {
            segments: vec![Segment::new(0.0, TAU, gradient, offset, amplitude)],
        }
    }

    /// The integer OAM eigenmode `e^{imφ}`.
    pub fn eigenmode(m: i64) -> Self {
        Self::uniform(m as f64, 0.0, Complex64::new(1.0, 0.0))
    }

    /// Builds a field from pieces that are known to cover the circle up to
    /// rounding. Pieces are sorted, slivers narrower than the boundary snap
    /// are dropped and the remaining boundaries are made contiguous.
    pub(crate) fn assemble(mut pieces: Vec<Segment>) -> Self {
        pieces.sort_by(|a, b| a.start.total_cmp(&b.start));
        pieces.retain(|s| s.width() > BOUNDARY_SNAP);
        debug_assert!(!pieces.is_empty());
        pieces[0].start = 0.0;
        for i in 1..pieces.len() {
            pieces[i].start = pieces[i - 1].end;
        }
        let n = pieces.len();
        pieces[n - 1].end = TAU;
        PiecewiseExpField { segments: pieces }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Index of the piece containing `phi`, which must lie in `[0, 2π)`.
    pub fn segment_index(&self, phi: f64) -> usize {
        let idx = self.segments.partition_point(|s| s.end <= phi);
        idx.min(self.segments.len() - 1)
    }

    pub fn value_at(&self, phi: Angle) -> Complex64 {
        let phi = phi.radians();
        self.segments[self.segment_index(phi)].value(phi)
    }

    /// All piece boundaries, including 0 and 2π.
    pub fn boundaries(&self) -> impl Iterator<Item = f64> + '_ {
        std::iter::once(0.0).chain(self.segments.iter().map(|s| s.end))
    }

    /// The rotated field `φ ↦ ψ(φ ⊖ β)`.
    ///
    /// Pieces are shifted by β; the one that straddles 2π is split, so the
    /// piece count grows by at most one.
    pub fn rotate(&self, beta: Angle) -> Self {
        let beta = beta.radians();
        if beta == 0.0 {
            return self.clone();
        }
        let mut pieces = Vec::with_capacity(self.segments.len() + 1);
        for s in &self.segments {
            let a = s.start + beta;
            let b = s.end + beta;
            // φ < 2π: original coordinate φ - β.
            let direct = s.offset - s.gradient * beta;
            // φ wrapped past 2π: original coordinate φ + 2π - β.
            let wrapped = s.offset + s.gradient * (TAU - beta);
            if b <= TAU {
                pieces.push(Segment::new(a, b, s.gradient, direct, s.amplitude));
            } else if a >= TAU {
                pieces.push(Segment::new(
                    a - TAU,
                    b - TAU,
                    s.gradient,
                    wrapped,
                    s.amplitude,
                ));
            } else {
                pieces.push(Segment::new(a, TAU, s.gradient, direct, s.amplitude));
                pieces.push(Segment::new(0.0, b - TAU, s.gradient, wrapped, s.amplitude));
            }
        }
        Self::assemble(pieces)
    }

    /// Multiplies the whole field by a complex constant.
    pub fn scaled(&self, factor: Complex64) -> Self {
        let segments = self
            .segments
            .iter()
            .map(|s| Segment {
                amplitude: s.amplitude * factor,
                ..*s
            })
            .collect();
        PiecewiseExpField { segments }
    }

    /// Pointwise sum of fields, merged exactly on the common refinement of
    /// their partitions. Every piece of the refinement must carry a single
    /// gradient across all summands.
    pub fn superpose(fields: &[PiecewiseExpField]) -> Result<Self> {
        if fields.is_empty() {
            return Err(Error::InvalidField("empty superposition".into()));
        }
        let mut cuts: Vec<f64> = fields.iter().flat_map(|f| f.boundaries()).collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|b, a| (*b - *a).abs() <= BOUNDARY_SNAP);

        let mut pieces = Vec::with_capacity(cuts.len());
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b - a <= BOUNDARY_SNAP {
                continue;
            }
            let mid = 0.5 * (a + b);
            let mut gradient: Option<f64> = None;
            let mut sum = Complex64::new(0.0, 0.0);
            for f in fields {
                let s = &f.segments[f.segment_index(mid)];
                match gradient {
                    None => gradient = Some(s.gradient),
                    Some(g) if (g - s.gradient).abs() <= MERGE_TOL * g.abs().max(1.0) => {}
                    Some(g) => {
                        return Err(Error::InvalidField(format!(
                            "summands have gradients {g} and {} on [{a}, {b})",
                            s.gradient
                        )))
                    }
                }
                sum += s.coefficient();
            }
            pieces.push(Segment::new(a, b, gradient.unwrap_or(0.0), 0.0, sum));
        }
        Ok(Self::assemble(pieces).merge_continuous())
    }

    /// Merges neighbouring pieces that carry the same exponential.
    pub fn merge_continuous(self) -> Self {
        let mut out: Vec<Segment> = Vec::with_capacity(self.segments.len());
        for s in self.segments {
            match out.last_mut() {
                Some(prev) if prev.same_exponential(&s) => prev.end = s.end,
                _ => out.push(s),
            }
        }
        PiecewiseExpField { segments: out }
    }

    /// Number of pieces when the circle is read cyclically: the last and
    /// first piece count once if the field is continuous across φ = 0.
    pub fn cyclic_segment_count(&self) -> usize {
        let n = self.segments.len();
        if n < 2 {
            return n;
        }
        let first = &self.segments[0];
        let last = &self.segments[n - 1];
        let same_gradient =
            (first.gradient - last.gradient).abs() <= MERGE_TOL * first.gradient.abs().max(1.0);
        let a = last.value(TAU);
        let b = first.value(0.0);
        if same_gradient && (a - b).norm() <= MERGE_TOL * (1.0 + a.norm()) {
            n - 1
        } else {
            n
        }
    }
}
