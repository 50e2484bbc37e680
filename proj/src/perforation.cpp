#include "homlab/perforation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace homlab {

double eta_for_gamma(double eps, double gamma, int n, double subcritical_p,
                     double gamma_eff) {
    if (eps <= 0.0) throw std::invalid_argument("eta_for_gamma: eps must be positive");
    double eta;
    if (gamma > 0.0) {
        if (n == 2) {
            eta = std::exp(1.0 - 1.0 / (gamma * eps * eps));
        } else {
            eta = std::pow(gamma * eps * eps, 1.0 / (n - 2));
        }
    } else if (gamma == 0.0) {
        if (subcritical_p <= 2.0 || gamma_eff <= 0.0)
            throw std::invalid_argument(
                "eta_for_gamma: gamma=0 requires sub-critical exponent p>2 and gamma_eff>0");
        if (n != 2)
            throw std::invalid_argument("eta_for_gamma: sub-critical mode implemented for n=2");
        eta = std::exp(1.0 - 1.0 / (gamma_eff * std::pow(eps, subcritical_p)));
    } else {
        throw std::invalid_argument("eta_for_gamma: gamma must be nonnegative");
    }
    if (!(eta < 1.0))
        throw std::runtime_error("eta_for_gamma: scaling not in regime (eta >= 1)");
    if (eta <= 0.0 || !std::isfinite(eta))
        throw std::runtime_error("eta_for_gamma: eta underflowed to zero");
    return eta;
}

double CavityShape::boundary_radius(double theta) const {
    switch (kind) {
        case Kind::disk:
        case Kind::ball:
            return semi_a;
        case Kind::ellipse: {
            const double t = theta - angle;
            const double c = std::cos(t), s = std::sin(t);
            return semi_a * semi_b /
                   std::sqrt(semi_b * semi_b * c * c + semi_a * semi_a * s * s);
        }
    }
    return semi_a;
}

double CavityShape::outer_radius() const {
    return kind == Kind::ellipse ? std::max(semi_a, semi_b) : semi_a;
}

double CavityShape::measure(int n) const {
    switch (kind) {
        case Kind::disk: return std::numbers::pi * semi_a * semi_a;
        case Kind::ellipse: return std::numbers::pi * semi_a * semi_b;
        case Kind::ball: return unit_ball_volume(n) * std::pow(semi_a, n);
    }
    return 0.0;
}

const char* CavityShape::kind_name(Kind k) {
    switch (k) {
        case Kind::disk: return "disk";
        case Kind::ellipse: return "ellipse";
        case Kind::ball: return "ball";
    }
    return "?";
}

const char* BoundaryLaw::kind_name(Kind k) {
    switch (k) {
        case Kind::dirichlet: return "dirichlet";
        case Kind::robin_large: return "robin_large";
        case Kind::robin_linear_plus: return "robin";
    }
    return "?";
}

double Domain::distance(const Vec3& a, const Vec3& b) const {
    Vec3 d = a - b;
    if (kind == Kind::torus) {
        for (int i = 0; i < box.n; ++i) {
            const double L = box.hi[i] - box.lo[i];
            d[i] -= L * std::round(d[i] / L);
        }
    }
    double s = 0.0;
    for (int i = 0; i < box.n; ++i) s += d[i] * d[i];
    return std::sqrt(s);
}

double Domain::boundary_distance(const Vec3& p) const {
    if (kind == Kind::torus) return std::numeric_limits<double>::infinity();
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < box.n; ++i) {
        m = std::min(m, p[i] - box.lo[i]);
        m = std::min(m, box.hi[i] - p[i]);
    }
    return m;
}

void PerforationSpec::validate_radii() const {
    if (!(R1 < R2 && R2 < R3))
        throw std::invalid_argument("radii must satisfy R1 < R2 < R3");
    if (!(R2 < R4 && R4 < R3))
        throw std::invalid_argument("R4 must satisfy R2 < R4 < R3");
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL");
    for (const auto& c : checks) {
        os << "\n  " << (c.pass ? "ok  " : "FAIL") << " " << c.name
           << "  margin=" << c.margin;
        if (!c.note.empty()) os << "  (" << c.note << ")";
    }
    return os.str();
}

namespace {

// Dense boundary sample of a shape in xi-coordinates.
std::vector<Vec3> sample_boundary(const CavityShape& shape, int n, int samples) {
    std::vector<Vec3> pts;
    if (n == 2) {
        pts.reserve(samples);
        for (int i = 0; i < samples; ++i) {
            const double th = 2.0 * std::numbers::pi * i / samples;
            const double r = shape.boundary_radius(th);
            pts.push_back(Vec3(r * std::cos(th), r * std::sin(th), 0.0));
        }
    } else {
        // Fibonacci sphere; balls only, radius constant.
        pts.reserve(samples);
        const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < samples; ++i) {
            const double z = 1.0 - 2.0 * (i + 0.5) / samples;
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double th = ga * i;
            pts.push_back(shape.semi_a *
                          Vec3(rho * std::cos(th), rho * std::sin(th), z));
        }
    }
    return pts;
}

} // namespace

ValidationReport validate_assumption_a1(const PerforationSpec& spec) {
    ValidationReport rep;
    spec.validate_radii();
    spec.regime.validate();

    auto add = [&rep](const std::string& name, double margin, std::string note = "") {
        rep.checks.push_back({name, margin, margin >= 0.0, std::move(note)});
    };

    if (spec.cavities.empty()) {
        add("empty perforation", 0.0, "no cavities; geometric checks vacuous");
        rep.pass = true;
        return rep;
    }

    constexpr int kSamples = 256;
    double worst_in = std::numeric_limits<double>::infinity();
    double worst_out = std::numeric_limits<double>::infinity();
    double worst_axes_lo = std::numeric_limits<double>::infinity();
    double worst_axes_hi = std::numeric_limits<double>::infinity();
    bool have_ellipse = false;
    for (const auto& cav : spec.cavities) {
        const auto& sh = cav.shape;
        if (spec.n == 2 && sh.kind == CavityShape::Kind::ball)
            throw std::invalid_argument("unsupported shape kind for n=2: ball");
        if (spec.n == 3 && sh.kind != CavityShape::Kind::ball)
            throw std::invalid_argument(std::string("unsupported shape kind for n=3: ") +
                                        CavityShape::kind_name(sh.kind));
        const auto pts = sample_boundary(sh, spec.n, kSamples);
        double min_dist_anchor = std::numeric_limits<double>::infinity();
        double max_norm = 0.0;
        for (const auto& p : pts) {
            min_dist_anchor = std::min(min_dist_anchor, (p - sh.anchor).norm());
            max_norm = std::max(max_norm, p.norm());
        }
        worst_in = std::min(worst_in, min_dist_anchor - spec.R1);
        worst_out = std::min(worst_out, spec.R2 - max_norm);
        if (sh.kind == CavityShape::Kind::ellipse) {
            have_ellipse = true;
            worst_axes_lo = std::min({worst_axes_lo, sh.semi_a - spec.R1,
                                      sh.semi_b - spec.R1});
            worst_axes_hi = std::min({worst_axes_hi, spec.R2 - sh.semi_a,
                                      spec.R2 - sh.semi_b});
        }
    }
    add("inscribed ball B_R1(y_k) inside cavity", worst_in);
    add("cavity inside B_R2(0)", worst_out);
    if (have_ellipse) {
        add("ellipse semi-axes >= R1", worst_axes_lo);
        add("ellipse semi-axes <= R2", worst_axes_hi);
    }

    // Pairwise exclusion balls B_{eps R3}(M_k) disjoint.
    const double excl = spec.exclusion_radius();
    double worst_pair = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k + 1 < spec.cavities.size(); ++k)
        for (size_t j = k + 1; j < spec.cavities.size(); ++j) {
            const double d = spec.domain.distance(spec.cavities[k].center,
                                                  spec.cavities[j].center);
            worst_pair = std::min(worst_pair, d - 2.0 * excl);
        }
    if (spec.cavities.size() > 1)
        add("exclusion balls B_{eps R3} pairwise disjoint", worst_pair);

    if (!spec.domain.periodic()) {
        double worst_bd = std::numeric_limits<double>::infinity();
        for (const auto& cav : spec.cavities)
            worst_bd = std::min(worst_bd,
                                spec.domain.boundary_distance(cav.center) - excl);
        add("dist(M_k, boundary) >= R3 eps", worst_bd);
    }

    // Physical cavity inside B_{eps eta R2} and E_k inside B_{eps R3}:
    // with the catalog this reduces to eta*R2 <= R4 <= R3 scale ordering.
    add("cavity in B_{eps eta R2} in E_k in B_{eps R3}",
        std::min(spec.R4 - spec.regime.eta * spec.R2, spec.R3 - spec.R4));

    // Second-type Robin coefficients: Re b >= c2 > 0 sampled on the boundary.
    double worst_b = std::numeric_limits<double>::infinity();
    bool have_rlp = false;
    // Discrete surrogate for the divergence of the large-Robin rate: the
    // combination eps*eta/kappa*mu1 must increase when eps shrinks by half.
    double worst_mu1 = std::numeric_limits<double>::infinity();
    bool have_rl = false;
    for (const auto& cav : spec.cavities) {
        if (cav.law.kind == BoundaryLaw::Kind::robin_linear_plus) {
            have_rlp = true;
            if (cav.law.b_fn) {
                for (int i = 0; i < 64; ++i)
                    worst_b = std::min(
                        worst_b, cav.law.b_fn(2.0 * std::numbers::pi * i / 64));
            } else {
                worst_b = std::min(worst_b, cav.law.b);
            }
        } else if (cav.law.kind == BoundaryLaw::Kind::robin_large) {
            have_rl = true;
            ScalingRegime fine = spec.regime;
            fine.eps *= 0.5;
            fine.eta = spec.regime.eta;  // conservative: same eta
            auto comb = [&](const ScalingRegime& r) {
                return r.eps * r.eta / r.kappa() * cav.law.mu1.value(r);
            };
            worst_mu1 = std::min(worst_mu1, comb(fine) - comb(spec.regime));
        }
    }
    if (have_rlp) add("Re b_k >= c2 > 0 on Robin boundaries", worst_b);
    if (have_rl) add("large-Robin rate eps*eta*mu1/kappa increasing in 1/eps", worst_mu1);

    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const ValidationCheck& c) { return c.pass; });
    return rep;
}

PerforationSpec generate_periodic(const LatticeDescriptor& lattice, double eps,
                                  double eta, const CavityShape& shape,
                                  const BoundaryLaw& law, const Domain& domain,
                                  double gamma) {
    if (eps <= 0.0 || eta <= 0.0) throw std::invalid_argument("eps, eta must be positive");
    PerforationSpec spec;
    spec.n = domain.box.n;
    spec.domain = domain;
    spec.regime = ScalingRegime{eps, eta, spec.n, gamma};
    if (lattice.cell / 2.0 < spec.R3)
        throw std::invalid_argument(
            "lattice cell too small: B_{R3}(0) does not fit inside the half-cell");

    const double period = eps * lattice.cell;
    const double excl = eps * spec.R3;
    const Vec3 ext = domain.box.extent();

    if (domain.periodic()) {
        for (int i = 0; i < spec.n; ++i) {
            const double m = ext[i] / period;
            if (std::abs(m - std::round(m)) > 1e-9 * std::max(1.0, m))
                throw std::invalid_argument(
                    "torus side must be an integer multiple of the lattice period");
        }
    }

    std::vector<Cavity> cavities;
    const int imax = static_cast<int>(std::ceil(ext.maxCoeff() / period)) + 2;
    for (int i = -1; i <= imax; ++i)
        for (int j = -1; j <= imax; ++j) {
            const int kmax = spec.n == 3 ? imax : -1;
            for (int k = -1; k <= std::max(-1, kmax); ++k) {
                Vec3 M = domain.box.lo + eps * lattice.offset;
                M[0] += i * period;
                M[1] += j * period;
                if (spec.n == 3) M[2] += k * period;
                bool keep = true;
                for (int d = 0; d < spec.n; ++d)
                    if (M[d] < domain.box.lo[d] - 1e-12 ||
                        M[d] >= domain.box.hi[d] - 1e-12)
                        keep = false;
                if (!keep) continue;
                if (!domain.periodic() &&
                    domain.boundary_distance(M) < excl)
                    continue;
                cavities.push_back({M, shape, law});
            }
        }
    spec.cavities = std::move(cavities);
    spec.lattice = LatticeInfo{period, eps * lattice.offset};

    auto rep = validate_assumption_a1(spec);
    if (!rep.pass)
        throw std::runtime_error("generated periodic spec fails validation:\n" +
                                 rep.summary());
    return spec;
}

PerforationSpec generate_perturbed(const PerforationSpec& base, double jitter,
                                   std::uint64_t seed) {
    if (jitter < 0.0) throw std::invalid_argument("jitter must be nonnegative");
    PerforationSpec out = base;
    if (jitter == 0.0) return out;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (auto& cav : out.cavities) {
        Vec3 d = Vec3::Zero();
        do {
            for (int i = 0; i < base.n; ++i) d[i] = uni(rng);
        } while (d.norm() > 1.0);
        cav.center += jitter * d;
        if (out.domain.periodic()) {
            for (int i = 0; i < base.n; ++i) {
                const double L = out.domain.box.hi[i] - out.domain.box.lo[i];
                double x = cav.center[i] - out.domain.box.lo[i];
                x -= L * std::floor(x / L);
                cav.center[i] = out.domain.box.lo[i] + x;
            }
        }
    }

    const double excl = out.exclusion_radius();
    for (size_t k = 0; k + 1 < out.cavities.size(); ++k)
        for (size_t j = k + 1; j < out.cavities.size(); ++j)
            if (out.domain.distance(out.cavities[k].center,
                                    out.cavities[j].center) < 2.0 * excl) {
                std::ostringstream os;
                os << "jitter too large: cavities " << k << " and " << j
                   << " violate the exclusion-ball disjointness";
                throw std::runtime_error(os.str());
            }
    auto rep = validate_assumption_a1(out);
    if (!rep.pass)
        throw std::runtime_error("perturbed spec fails validation:\n" + rep.summary());
    return out;
}

PerforationSpec combine(const PerforationSpec& a, const PerforationSpec& b,
                        CombineMode mode) {
    PerforationSpec out = a;
    if (mode == CombineMode::set_union) {
        out.cavities.insert(out.cavities.end(), b.cavities.begin(),
                            b.cavities.end());
        out.lattice.reset();
        auto rep = validate_assumption_a1(out);
        if (!rep.pass)
            throw std::runtime_error("union violates the geometric assumption:\n" +
                                     rep.summary());
        return out;
    }
    // difference: every center of b must match a center of a
    std::vector<Cavity> remaining = a.cavities;
    for (const auto& cb : b.cavities) {
        auto it = std::find_if(remaining.begin(), remaining.end(),
                               [&](const Cavity& ca) {
                                   return a.domain.distance(ca.center, cb.center) <
                                          1e-12 * std::max(1.0, cb.center.norm());
                               });
        if (it == remaining.end()) {
            std::ostringstream os;
            os << "difference: center (" << cb.center[0] << ", " << cb.center[1]
               << ") not present in the first perforation";
            throw std::runtime_error(os.str());
        }
        remaining.erase(it);
    }
    out.cavities = std::move(remaining);
    return out;
}

namespace {

void write_rate(std::ostream& os, const RateDescriptor& r) {
    os << r.c << ' ' << r.p_eps << ' ' << r.p_eta << ' ' << r.p_kappa;
}

RateDescriptor read_rate(std::istream& is) {
    RateDescriptor r;
    is >> r.c >> r.p_eps >> r.p_eta >> r.p_kappa;
    return r;
}

} // namespace

void save_spec(const PerforationSpec& spec, std::ostream& os) {
    os.precision(17);
    os << "homlab-perforation 1\n";
    os << "dim " << spec.n << '\n';
    os << "domain " << (spec.domain.periodic() ? "torus" : "rect");
    for (int i = 0; i < spec.n; ++i) os << ' ' << spec.domain.box.lo[i];
    for (int i = 0; i < spec.n; ++i) os << ' ' << spec.domain.box.hi[i];
    os << '\n';
    os << "radii " << spec.R1 << ' ' << spec.R2 << ' ' << spec.R3 << ' ' << spec.R4
       << '\n';
    os << "regime " << spec.regime.eps << ' ' << spec.regime.eta << ' '
       << spec.regime.gamma << '\n';
    if (spec.lattice) {
        os << "lattice " << spec.lattice->period;
        for (int i = 0; i < spec.n; ++i) os << ' ' << spec.lattice->offset[i];
        os << '\n';
    }
    for (const auto& cav : spec.cavities) {
        for (int i = 0; i < spec.n; ++i) os << cav.center[i] << ' ';
        os << CavityShape::kind_name(cav.shape.kind) << ' ' << cav.shape.semi_a
           << ' ' << cav.shape.semi_b << ' ' << cav.shape.angle << ' ';
        os << BoundaryLaw::kind_name(cav.law.kind);
        switch (cav.law.kind) {
            case BoundaryLaw::Kind::dirichlet: break;
            case BoundaryLaw::Kind::robin_large:
                os << ' ';
                write_rate(os, cav.law.mu1);
                break;
            case BoundaryLaw::Kind::robin_linear_plus:
                os << ' ' << cav.law.b << ' ';
                write_rate(os, cav.law.mu2);
                break;
        }
        os << '\n';
    }
}

PerforationSpec load_spec(std::istream& is) {
    PerforationSpec spec;
    std::string magic;
    int version = 0;
    is >> magic >> version;
    if (magic != "homlab-perforation")
        throw std::runtime_error("not a perforation spec stream");
    std::string key;
    while (is >> key) {
        if (key == "dim") {
            is >> spec.n;
            spec.domain.box.n = spec.n;
            spec.regime.n = spec.n;
        } else if (key == "domain") {
            std::string kind;
            is >> kind;
            spec.domain.kind =
                kind == "torus" ? Domain::Kind::torus : Domain::Kind::rectangle;
            spec.domain.box.n = spec.n;
            for (int i = 0; i < spec.n; ++i) is >> spec.domain.box.lo[i];
            for (int i = 0; i < spec.n; ++i) is >> spec.domain.box.hi[i];
        } else if (key == "radii") {
            is >> spec.R1 >> spec.R2 >> spec.R3 >> spec.R4;
        } else if (key == "regime") {
            is >> spec.regime.eps >> spec.regime.eta >> spec.regime.gamma;
            spec.regime.n = spec.n;
        } else if (key == "lattice") {
            LatticeInfo li;
            is >> li.period;
            for (int i = 0; i < spec.n; ++i) is >> li.offset[i];
            spec.lattice = li;
        } else {
            Cavity cav;
            cav.center[0] = std::stod(key);
            for (int i = 1; i < spec.n; ++i) is >> cav.center[i];
            std::string shape_kind;
            is >> shape_kind >> cav.shape.semi_a >> cav.shape.semi_b >>
                cav.shape.angle;
            if (shape_kind == "disk") cav.shape.kind = CavityShape::Kind::disk;
            else if (shape_kind == "ellipse") cav.shape.kind = CavityShape::Kind::ellipse;
            else if (shape_kind == "ball") cav.shape.kind = CavityShape::Kind::ball;
            else throw std::runtime_error("unknown shape kind: " + shape_kind);
            std::string law_kind;
            is >> law_kind;
            if (law_kind == "dirichlet") {
                cav.law.kind = BoundaryLaw::Kind::dirichlet;
            } else if (law_kind == "robin_large") {
                cav.law.kind = BoundaryLaw::Kind::robin_large;
                cav.law.mu1 = read_rate(is);
            } else if (law_kind == "robin") {
                cav.law.kind = BoundaryLaw::Kind::robin_linear_plus;
                is >> cav.law.b;
                cav.law.mu2 = read_rate(is);
            } else {
                throw std::runtime_error("unknown law kind: " + law_kind);
            }
            spec.cavities.push_back(std::move(cav));
        }
    }
    return spec;
}

} // namespace homlab
