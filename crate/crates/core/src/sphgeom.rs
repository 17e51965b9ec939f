//! Spherical trigonometry kernel.
//!
//! Points on the unit sphere, minor-arc distances, oriented corner angles,
//! spherical triangle existence and the two cosine laws, and polygon area by
//! angle excess.  The sphere orientation is fixed right-handed:
//! counterclockwise as seen from outside.  All inverse trigonometry clamps its
//! argument to `[-1, 1]` first.

use crate::tol;
use crate::{Error, Result};

const TAU: f64 = std::f64::consts::TAU;
const PI: f64 = std::f64::consts::PI;

/// Clamps to `[-1, 1]` before an inverse trig call.
#[inline]
pub fn clamp_unit(x: f64) -> f64 {
    x.clamp(-1.0, 1.0)
}

/// A point on the unit sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl UnitVector {
    /// North pole `(0, 0, 1)`.
    pub const NORTH: UnitVector = UnitVector {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    /// South pole `(0, 0, -1)`.
    pub const SOUTH: UnitVector = UnitVector {
        x: 0.0,
        y: 0.0,
        z: -1.0,
    };

    /// Wraps components that are already normalized within [`tol::UNIT`].
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n2 = x * x + y * y + z * z;
        if (n2 - 1.0).abs() > 16.0 * tol::UNIT {
            return Err(Error::OutOfDomain {
                name: "|v|^2",
                value: n2,
                domain: "1 within tolerance",
            });
        }
        Ok(Self { x, y, z })
    }

    /// Normalizes an arbitrary non-zero vector onto the sphere.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if n < 1e-14 {
            return Err(Error::DegenerateCorner("cannot normalize a zero vector"));
        }
        Ok(Self {
            x: x / n,
            y: y / n,
            z: z / n,
        })
    }

    /// Point at the given colatitude (angle from the north pole, in `[0, pi]`)
    /// and longitude (counterclockwise around the north pole, `0` on the
    /// positive x half-plane).
    pub fn from_polar(colatitude: f64, longitude: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&colatitude) {
            return Err(Error::ColatitudeOutOfRange(colatitude));
        }
        let (s, c) = colatitude.sin_cos();
        Ok(Self {
            x: s * longitude.cos(),
            y: s * longitude.sin(),
            z: c,
        })
    }

    #[inline]
    pub fn dot(self, o: UnitVector) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    /// Cross product as raw components (not generally unit length).
    #[inline]
    pub fn cross(self, o: UnitVector) -> [f64; 3] {
        [
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        ]
    }

    /// The antipodal point.
    #[inline]
    pub fn antipode(self) -> UnitVector {
        UnitVector {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// Angle from the north pole, in `[0, pi]`.
    pub fn colatitude(self) -> f64 {
        clamp_unit(self.z).acos()
    }

    /// Longitude in `(-pi, pi]`, counterclockwise, `0` at the positive x axis.
    /// Arbitrary (0) at the poles.
    pub fn longitude(self) -> f64 {
        if self.x == 0.0 && self.y == 0.0 {
            0.0
        } else {
            self.y.atan2(self.x)
        }
    }

    /// Rodrigues rotation of `self` by `angle` about the axis `axis`
    /// (right-handed).
    pub fn rotated_about(self, axis: UnitVector, angle: f64) -> UnitVector {
        let (s, c) = angle.sin_cos();
        let k = axis;
        let kxv = k.cross(self);
        let kdv = k.dot(self);
        let f = kdv * (1.0 - c);
        UnitVector {
            x: self.x * c + kxv[0] * s + k.x * f,
            y: self.y * c + kxv[1] * s + k.y * f,
            z: self.z * c + kxv[2] * s + k.z * f,
        }
    }

    /// Unit tangent at `self` pointing along the minor arc toward `to`.
    /// Errors when the points coincide or are antipodal.
    pub fn tangent_toward(self, to: UnitVector) -> Result<UnitVector> {
        let d = self.dot(to);
        let tx = to.x - d * self.x;
        let ty = to.y - d * self.y;
        let tz = to.z - d * self.z;
        UnitVector::normalized(tx, ty, tz)
            .map_err(|_| Error::DegenerateCorner("tangent undefined for equal or antipodal points"))
    }
}

/// Minor-arc geodesic distance in `[0, pi]`.  Symmetric; never errors (the
/// dot product is clamped).
pub fn distance(p: UnitVector, q: UnitVector) -> f64 {
    // atan2 of chord data is better conditioned than acos near 0 and pi.
    let c = p.cross(q);
    let s = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    s.atan2(p.dot(q))
}

/// The angle at `q` from the edge `pq` to the edge `rq`, measured in the fixed
/// (counterclockwise from outside) orientation, reported in `(0, 2*pi)`.
///
/// Swapping `p` and `r` complements the value to `2*pi`.
pub fn corner_angle(p: UnitVector, q: UnitVector, r: UnitVector) -> Result<f64> {
    let tp = q.tangent_toward(p)?;
    let tr = q.tangent_toward(r)?;
    let cross = tp.cross(tr);
    let sin_term = q.x * cross[0] + q.y * cross[1] + q.z * cross[2];
    let cos_term = tp.dot(tr);
    let mut angle = sin_term.atan2(cos_term);
    if angle <= 0.0 {
        angle += TAU;
    }
    Ok(angle)
}

/// A spherical triangle stored by its three vertex angles and the opposite
/// side lengths, all in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalTriangle {
    pub angle_a: f64,
    pub angle_b: f64,
    pub angle_c: f64,
    pub side_a: f64,
    pub side_b: f64,
    pub side_c: f64,
}

impl SphericalTriangle {
    /// Residual of the cosine law `cos a = cos b cos c + sin b sin c cos A`
    /// over all three cyclic permutations, as a maximum absolute value.
    pub fn cosine_law_residual(&self) -> f64 {
        let sides = [self.side_a, self.side_b, self.side_c];
        let angles = [self.angle_a, self.angle_b, self.angle_c];
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            let (a, b, c) = (sides[i], sides[(i + 1) % 3], sides[(i + 2) % 3]);
            let r = a.cos() - (b.cos() * c.cos() + b.sin() * c.sin() * angles[i].cos());
            worst = worst.max(r.abs());
        }
        worst
    }

    /// Residual of the dual cosine law
    /// `cos A = -cos B cos C + sin B sin C cos a`, maximum over permutations.
    pub fn dual_law_residual(&self) -> f64 {
        let sides = [self.side_a, self.side_b, self.side_c];
        let angles = [self.angle_a, self.angle_b, self.angle_c];
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            let (ba, bb, bc) = (angles[i], angles[(i + 1) % 3], angles[(i + 2) % 3]);
            let r = ba.cos() - (-bb.cos() * bc.cos() + bb.sin() * bc.sin() * sides[i].cos());
            worst = worst.max(r.abs());
        }
        worst
    }
}

/// The unique (up to congruence) spherical triangle with the given vertex
/// angles, when it exists.
///
/// Existence requires `0 < A, B, C < pi` together with `A + B + C > pi`,
/// `-A + B + C < pi`, `A - B + C < pi` and `A + B - C < pi`; the error names
/// the violated inequality.  Sides come from the dual cosine law.
pub fn triangle_from_angles(a: f64, b: f64, c: f64) -> Result<SphericalTriangle> {
    for (name, v) in [("A", a), ("B", b), ("C", c)] {
        if !(v > 0.0 && v < PI) {
            return Err(Error::OutOfDomain {
                name,
                value: v,
                domain: "(0, pi)",
            });
        }
    }
    if a + b + c <= PI {
        return Err(Error::NoSuchTriangle("A + B + C > pi"));
    }
    if -a + b + c >= PI {
        return Err(Error::NoSuchTriangle("-A + B + C < pi"));
    }
    if a - b + c >= PI {
        return Err(Error::NoSuchTriangle("A - B + C < pi"));
    }
    if a + b - c >= PI {
        return Err(Error::NoSuchTriangle("A + B - C < pi"));
    }
    let side = |va: f64, vb: f64, vc: f64| {
        clamp_unit((va.cos() + vb.cos() * vc.cos()) / (vb.sin() * vc.sin())).acos()
    };
    Ok(SphericalTriangle {
        angle_a: a,
        angle_b: b,
        angle_c: c,
        side_a: side(a, b, c),
        side_b: side(b, c, a),
        side_c: side(c, a, b),
    })
}

/// The side `a` opposite to `A` from `cos a = cos b cos c + sin b sin c cos A`.
pub fn side_from_sides_and_angle(b: f64, c: f64, big_a: f64) -> f64 {
    clamp_unit(b.cos() * c.cos() + b.sin() * c.sin() * big_a.cos()).acos()
}

/// Area of a spherical polygon by angle excess: the sum of the interior
/// angles minus `(k - 2) * pi` for a `k`-gon.
///
/// The vertices fix the arity and must match the angle list; the angles are
/// assumed consistent with the fixed orientation.
pub fn polygon_area(vertices: &[UnitVector], interior_angles: &[f64]) -> Result<f64> {
    if vertices.len() < 3 {
        return Err(Error::PolygonTooSmall(vertices.len()));
    }
    if vertices.len() != interior_angles.len() {
        return Err(Error::IncompleteLabeling(
            "vertex and angle lists differ in length",
        ));
    }
    let k = vertices.len() as f64;
    Ok(interior_angles.iter().sum::<f64>() - (k - 2.0) * PI)
}
