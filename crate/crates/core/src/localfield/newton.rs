use crate::error::{Error, Result};
use crate::funcfield::LogValue;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub slope: LogValue,
    pub length: u64,
    /// x-coordinate of the left endpoint.
    pub start: u64,
}

/// Lower convex hull of points (exponent, valuation of coefficient).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub points: Vec<(u64, LogValue)>,
    pub segments: Vec<Segment>,
}

fn cross(o: (u64, LogValue), a: (u64, LogValue), b: (u64, LogValue)) -> LogValue {
    let ax = LogValue::from_integer(a.0 as i64 - o.0 as i64);
    let bx = LogValue::from_integer(b.0 as i64 - o.0 as i64);
    ax * (b.1 - o.1) - (a.1 - o.1) * bx
}

pub fn newton_polygon(points: &[(u64, LogValue)]) -> Result<NewtonPolygon> {
    let mut pts = points.to_vec();
    pts.sort();
    // keep the lowest y at each x
    pts.dedup_by(|b, a| a.0 == b.0);
    if pts.len() < 2 {
        return Err(Error::DegeneratePolynomial);
    }
    let mut hull: Vec<(u64, LogValue)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= LogValue::from_integer(0) {
            hull.pop();
        }
        hull.push(p);
    }
    let segments = hull
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            Segment { slope: (w[1].1 - w[0].1) / LogValue::from_integer(len as i64), length: len, start: w[0].0 }
        })
        .collect();
    Ok(NewtonPolygon { points: pts, segments })
}

impl NewtonPolygon {
    pub fn left(&self) -> u64 {
        self.points[0].0
    }
    pub fn right(&self) -> u64 {
        self.points[self.points.len() - 1].0
    }
    /// Height of the hull at x, for x within the span.
    pub fn value_at(&self, x: u64) -> Option<LogValue> {
        let mut y = self.points[0].1;
        if x == self.left() {
            return Some(y);
        }
        for s in &self.segments {
            let end = s.start + s.length;
            if x <= end {
                return Some(y + s.slope * LogValue::from_integer((x - s.start) as i64));
            }
            y += s.slope * LogValue::from_integer(s.length as i64);
        }
        None
    }
    pub fn min_slope(&self) -> LogValue {
        self.segments[0].slope
    }
    pub fn max_slope(&self) -> LogValue {
        self.segments[self.segments.len() - 1].slope
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(n: i64, d: i64) -> LogValue {
        LogValue::new(n, d)
    }

    #[test]
    fn examples() {
        let np = newton_polygon(&[(1, lv(1, 1)), (3, lv(0, 1)), (9, lv(1, 1))]).unwrap();
        let segs: Vec<(LogValue, u64)> = np.segments.iter().map(|s| (s.slope, s.length)).collect();
        assert_eq!(segs, vec![(lv(-1, 2), 2), (lv(1, 6), 6)]);

        let np = newton_polygon(&[(1, lv(0, 1)), (27, lv(0, 1))]).unwrap();
        assert_eq!(np.segments.len(), 1);
        assert_eq!(np.segments[0].slope, lv(0, 1));

        let np = newton_polygon(&[(0, lv(-1, 1)), (1, lv(0, 1)), (3, lv(0, 1))]).unwrap();
        assert_eq!(np.segments, vec![Segment { slope: lv(1, 3), length: 3, start: 0 }]);
        assert_eq!(np.value_at(1), Some(lv(-2, 3)));

        assert_eq!(newton_polygon(&[(2, lv(0, 1))]), Err(Error::DegeneratePolynomial));
    }
}
