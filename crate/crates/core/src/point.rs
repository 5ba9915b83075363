use std::f64::consts::TAU;

/// Reduce an angle to its canonical representative in `[0, 2π)`.
pub fn canonical_angle(theta: f64) -> f64 {
    let a = theta.rem_euclid(TAU);
    // rem_euclid can round up to the modulus for tiny negative inputs,
    // and -0.0 must not leak into serialized output.
    if a >= TAU || a == 0.0 {
        0.0
    } else {
        a
    }
}

/// A point on the unit circle, stored as its canonical angle in `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitPoint {
    angle: f64,
}

impl UnitPoint {
    pub fn new(theta: f64) -> Self {
        Self { angle: canonical_angle(theta) }
    }

    pub fn angle(self) -> f64 {
        self.angle
    }

    pub fn re(self) -> f64 {
        self.angle.cos()
    }

    pub fn im(self) -> f64 {
        self.angle.sin()
    }

    /// Group operation on the circle: angle addition mod 2π.
    pub fn rotate(self, other: UnitPoint) -> UnitPoint {
        UnitPoint::new(self.angle + other.angle)
    }

    /// Complex conjugate, the reflection θ ↦ −θ.
    pub fn conjugate(self) -> UnitPoint {
        UnitPoint::new(-self.angle)
    }

    /// Shorter arc length between two points, in `[0, π]`.
    pub fn circular_distance(self, other: UnitPoint) -> f64 {
        let d = (self.angle - other.angle).abs();
        d.min(TAU - d)
    }
}
