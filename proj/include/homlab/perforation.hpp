#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "homlab/geometry.hpp"
#include "homlab/scaling.hpp"

namespace homlab {

/// Cavity shape in xi-coordinates (the cavity scaled by 1/(eps*eta)).
/// Catalog: disks/ellipses in 2D, balls in 3D. The inscribed ball of radius
/// R1 around the anchor must fit inside, and the shape must fit in B_{R2}(0).
struct CavityShape {
    enum class Kind { disk, ellipse, ball };
    Kind kind = Kind::disk;
    double semi_a = 1.0;   // disk/ball radius, or ellipse first semi-axis
    double semi_b = 1.0;   // ellipse second semi-axis (ignored otherwise)
    double angle = 0.0;    // rotation, radians, 2D only
    Vec3 anchor = Vec3::Zero();  // y_k in xi-coordinates

    /// Polar radius of the boundary in direction theta (2D kinds).
    double boundary_radius(double theta) const;
    /// Max |xi| over the boundary.
    double outer_radius() const;
    /// Shape area (2D) / volume (3D) in xi-units.
    double measure(int n) const;
    bool is_round() const { return kind != Kind::ellipse || semi_a == semi_b; }
    static const char* kind_name(Kind k);
};

/// Boundary condition attached to one cavity. robin_large models the
/// divergent-rate Robin class that behaves like Dirichlet in the limit;
/// robin_linear_plus is the eps^-1 eta^-1 b_k u + remainder class.
struct BoundaryLaw {
    enum class Kind { dirichlet, robin_large, robin_linear_plus };
    Kind kind = Kind::dirichlet;

    // robin_large
    RateDescriptor mu1;
    // robin_linear_plus
    double b = 1.0;                               // constant Re b >= c2 > 0
    std::function<double(double)> b_fn;           // optional b(theta) on the boundary
    RateDescriptor mu2;                           // remainder Lipschitz rate
    std::function<double(double, double)> a_tilde;  // remainder a~(s,u); a~(.,0)=0

    bool needs_dirichlet_cell() const { return kind != Kind::robin_linear_plus; }
    static const char* kind_name(Kind k);
};

struct Cavity {
    Vec3 center = Vec3::Zero();  // M_k in physical coordinates
    CavityShape shape;
    BoundaryLaw law;
};

/// Ambient domain: axis-aligned rectangle/box with Dirichlet outer boundary,
/// or a flat torus (no outer boundary; whole-space surrogate).
struct Domain {
    enum class Kind { rectangle, torus };
    Kind kind = Kind::rectangle;
    BoxN box;

    bool periodic() const { return kind == Kind::torus; }
    /// Distance respecting periodicity on the torus.
    double distance(const Vec3& a, const Vec3& b) const;
    double boundary_distance(const Vec3& p) const;  // +inf on the torus
};

/// Optional lattice metadata kept by the generators; consumed by the mesher
/// (cell decomposition) and by window constructions.
struct LatticeInfo {
    double period = 0.0;   // physical period (= eps * cell side)
    Vec3 offset = Vec3::Zero();
};

struct PerforationSpec {
    int n = 2;
    Domain domain;
    double R1 = 1.0, R2 = 7.0 / 6.0, R3 = 1.5, R4 = 4.0 / 3.0;
    ScalingRegime regime;
    std::vector<Cavity> cavities;
    std::optional<LatticeInfo> lattice;

    void validate_radii() const;
    /// Physical cavity radius bound eps*eta*R2 and the exclusion radius eps*R3.
    double exclusion_radius() const { return regime.eps * R3; }
};

struct ValidationCheck {
    std::string name;
    double margin = 0.0;  // >= 0 means pass
    bool pass = true;
    std::string note;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool pass = true;
    std::string summary() const;
};

/// One entry per inequality of the geometric assumption plus the shape
/// inscribed-ball / containment checks; pass iff all margins >= 0.
ValidationReport validate_assumption_a1(const PerforationSpec& spec);

/// Lattice descriptor for periodic generation: points scale*Z^n (+offset),
/// cell [-scale/2, scale/2)^n, all multiplied by eps in physical space.
struct LatticeDescriptor {
    double cell = 4.0;  // cell side in lattice units; points at cell*Z^n
    Vec3 offset = Vec3::Zero();
};

PerforationSpec generate_periodic(const LatticeDescriptor& lattice, double eps,
                                  double eta, const CavityShape& shape,
                                  const BoundaryLaw& law, const Domain& domain,
                                  double gamma = 0.0);

/// Shift every center by an independent uniform displacement of magnitude
/// <= jitter (absolute units). Fails if the jittered family violates the
/// geometric assumption.
PerforationSpec generate_perturbed(const PerforationSpec& base, double jitter,
                                   std::uint64_t seed);

enum class CombineMode { set_union, set_difference };

PerforationSpec combine(const PerforationSpec& a, const PerforationSpec& b,
                        CombineMode mode);

/// Serialization: line-oriented text, one cavity per line.
void save_spec(const PerforationSpec& spec, std::ostream& os);
PerforationSpec load_spec(std::istream& is);

} // namespace homlab
