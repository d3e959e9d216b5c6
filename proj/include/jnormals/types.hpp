#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace jnormals {

using Vec = Eigen::VectorXd;

// Absolute tolerances used throughout (double precision, ambient dim <= 8).
inline constexpr double kUnitTol = 1e-9;    // |norm - 1| for unit vectors
inline constexpr double kOrthTol = 1e-9;    // residual dot products after orthonormalization
inline constexpr double kRankTol = 1e-10;   // relative rank/independence threshold
inline constexpr double kSegTol = 1e-12;    // minimal admissible segment length
inline constexpr double kAngleTol = 1e-8;   // projective inequality threshold (radians)
inline constexpr double kPolarTol = 1e-8;   // near-polar rejection for sphere projections
// Duplicate-point threshold. acos of a clamped dot resolves angles only down
// to ~1.5e-8 (sqrt of machine epsilon), so coincident points must be
// identified well above that floor.
inline constexpr double kCollapseTol = 1e-7;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RankDeficient : Error {
    int index;
    explicit RankDeficient(int k)
        : Error("rank-deficient input at position " + std::to_string(k)), index(k) {}
};

struct DegenerateSegment : Error {
    int index;
    explicit DegenerateSegment(int i)
        : Error("degenerate segment " + std::to_string(i)), index(i) {}
};

struct DegenerateArc : Error {
    DegenerateArc() : Error("trivial or antipodal geodesic arc") {}
};

struct FlatPolygonal : Error {
    FlatPolygonal() : Error("polygonal lies in a too-low-dimensional affine subspace") {}
};

struct InvalidOrder : Error {
    explicit InvalidOrder(int j) : Error("normal order out of range: " + std::to_string(j)) {}
};

struct UnknownCurve : Error {
    explicit UnknownCurve(const std::string& n) : Error("unknown curve: " + n) {}
};

struct BadParams : Error {
    explicit BadParams(const std::string& what) : Error("bad curve parameters: " + what) {}
};

struct OutOfDomain : Error {
    explicit OutOfDomain(double s) : Error("parameter outside curve domain: " + std::to_string(s)) {}
};

struct NotSmoothlyTurning : Error {
    double s;
    explicit NotSmoothlyTurning(double at)
        : Error("curve is not smoothly turning at s = " + std::to_string(at)), s(at) {}
};

struct NotMildlyTurning : Error {
    double s;
    explicit NotMildlyTurning(double at)
        : Error("curve is not mildly smoothly turning at s = " + std::to_string(at)), s(at) {}
};

struct NotInvertible : Error {
    NotInvertible() : Error("transition function is not invertible (zero speed)") {}
};

struct NotConverged : Error {
    explicit NotConverged(const std::string& what) : Error("not converged: " + what) {}
};

struct DegenerateProjection : Error {
    DegenerateProjection() : Error("projection collapses the polygonal") {}
};

struct NearPolar : Error {
    int index;
    explicit NearPolar(int i)
        : Error("point " + std::to_string(i) + " is nearly orthogonal to the plane"), index(i) {}
};

struct DegenerateCurve : Error {
    explicit DegenerateCurve(const std::string& what) : Error("degenerate curve: " + what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error("i/o error: " + what) {}
};

// Unit vector on the Gauss sphere S^N (N+1 coordinates).
class UnitVec {
  public:
    explicit UnitVec(Vec v) : v_(std::move(v)) {
        const double n = v_.norm();
        if (n < kSegTol) throw RankDeficient(0);
        if (std::abs(n - 1.0) > kUnitTol) v_ /= n;
    }
    static UnitVec unchecked(Vec v) { return UnitVec(Tag{}, std::move(v)); }

    const Vec& vec() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()); }
    double dot(const UnitVec& o) const { return v_.dot(o.v_); }
    UnitVec negated() const { return UnitVec(Tag{}, -v_); }

  private:
    struct Tag {};
    UnitVec(Tag, Vec v) : v_(std::move(v)) {}
    Vec v_;
};

// Point of RP^N: canonical representative has its first coordinate of
// magnitude above kUnitTol strictly positive, so canonical(u) == canonical(-u).
class ProjPoint {
  public:
    explicit ProjPoint(const UnitVec& u) : rep_(canonicalize(u)) {}
    explicit ProjPoint(const Vec& v) : ProjPoint(UnitVec(v)) {}

    const UnitVec& rep() const { return rep_; }
    const Vec& vec() const { return rep_.vec(); }
    int dim() const { return rep_.dim(); }

  private:
    static UnitVec canonicalize(const UnitVec& u) {
        const Vec& v = u.vec();
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (std::abs(v[i]) > kUnitTol) {
                return v[i] > 0 ? u : u.negated();
            }
        }
        return u;
    }
    UnitVec rep_;
};

}  // namespace jnormals
