#include "tricert/distortion.hpp"

#include <cmath>
#include <limits>

namespace tricert {

namespace {

Vector draw_domain_point(const SampledMap& f, Rng& rng) {
    if (f.domain) return sample_uniform(*f.domain, rng);
    return f.point_set[size_t(rng.index(f.point_set.size()))];
}

void require_sampleable(const SampledMap& f) {
    if (f.domain) {
        if (f.domain->dim() == 0) throw DegenerateDomain("single-point domain");
        if (thickness(*f.domain) < tol().degenerate_thickness)
            throw DegenerateDomain("zero-measure simplex domain");
        return;
    }
    if (f.point_set.size() < 2) throw DegenerateDomain("point set needs >= 2 points");
}

}  // namespace

DistortionBound measure_distortion(const SampledMap& f, int pairs, uint64_t seed) {
    if (pairs < 1) throw Error("measure_distortion: pairs >= 1");
    require_sampleable(f);
    double worst = 0.0;
    Rng rng(seed);
    int taken = 0;
    int guard = 0;
    while (taken < pairs) {
        Vector x = draw_domain_point(f, rng);
        Vector y = draw_domain_point(f, rng);
        double d = (x - y).norm();
        if (d <= 1e-14) {
            if (++guard > 100 * pairs + 100) throw DegenerateDomain("cannot draw distinct pairs");
            continue;
        }
        double img = (f.eval(x) - f.eval(y)).norm();
        worst = std::max(worst, std::abs(img / d - 1.0));
        ++taken;
    }
    return {worst, BoundKind::EmpiricalLower,
            "pair sampling (" + std::to_string(pairs) + " pairs)", false};
}

double compose_distortion(const std::vector<double>& xis) {
    double prod = 1.0;
    for (double xi : xis) {
        if (xi < 0.0) throw XiOutOfRange("compose_distortion: xi >= 0 required");
        prod *= 1.0 + xi;
    }
    return prod - 1.0;
}

double subset_sum_distortion_oracle(const std::vector<double>& xis) {
    const size_t k = xis.size();
    if (k > 25) throw Error("subset oracle limited to k <= 25");
    double sum = 0.0;
    for (uint64_t mask = 1; mask < (uint64_t(1) << k); ++mask) {
        double prod = 1.0;
        for (size_t i = 0; i < k; ++i)
            if (mask & (uint64_t(1) << i)) prod *= xis[i];
        sum += prod;
    }
    return sum;
}

double invert_distortion(double xi) {
    if (xi < 0.0) throw XiOutOfRange("invert_distortion: xi >= 0 required");
    if (!(xi < 1.0)) throw XiNotLessThanOne();
    return xi / (1.0 - xi);
}

LinearMapSpectrum spectrum_from_distortion(const SampledMap& f, const Vector& x, double h) {
    if (!(h > 0.0)) throw StepTooSmall("step must be positive");
    double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    if (h < 256.0 * std::numeric_limits<double>::epsilon() * scale)
        throw StepTooSmall("cancellation: step below 256*eps*scale");
    const int n = int(x.size());
    Vector fw, bw, xp, xm;
    Matrix J(f.eval(x).size(), n);
    for (int i = 0; i < n; ++i) {
        xp = x;
        xm = x;
        xp(i) += h;
        xm(i) -= h;
        fw = f.eval(xp);
        bw = f.eval(xm);
        J.col(i) = (fw - bw) / (2.0 * h);
    }
    if (!J.allFinite()) throw StepTooSmall("non-finite finite-difference Jacobian");
    return svd_spectrum(J);
}

DistortionBound distortion_from_spectrum_bound(const SampledMap& f, const EuclideanSimplex& domain,
                                               double xi, int grid_per_dim) {
    if (!(xi >= 0.0 && xi < 1.0)) throw XiOutOfRange("need 0 <= xi < 1");
    const int j = domain.dim();
    double h = 1e-5 * std::max(quality_measures(domain).longest_edge_L, 1e-6);
    // barycentric grid over the domain
    std::vector<std::vector<double>> grid;
    std::vector<int> idx(size_t(j) + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == j) {
            idx[size_t(pos)] = left;
            std::vector<double> lam(static_cast<size_t>(j) + 1);
            for (int i = 0; i <= j; ++i) lam[size_t(i)] = double(idx[size_t(i)]) / grid_per_dim;
            grid.push_back(std::move(lam));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            idx[size_t(pos)] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, grid_per_dim);
    for (const auto& lam : grid) {
        Vector x = point_from_barycentric(domain, lam);
        auto spec = spectrum_from_distortion(f, x, h);
        for (double s : spec.singular_values)
            if (std::abs(s - 1.0) > xi)
                throw SpectrumBoundViolated("sampled |s_i - 1| = " + std::to_string(std::abs(s - 1.0)) +
                                            " exceeds xi = " + std::to_string(xi));
    }
    DistortionBound b;
    b.xi = xi;
    b.kind = BoundKind::CertifiedUpper;
    b.provenance = "differential bound on sampled grid";
    b.conditional_on_hypotheses = true;  // injectivity + convex image are the caller's
    return b;
}

bool strong_displacement_check(const SampledMap& f, const EuclideanSimplex& s, int p_index,
                               double xi, int samples, uint64_t seed) {
    if (p_index < 0 || p_index > s.dim()) throw IndexOutOfRange("strong_displacement_check");
    Vector p = s.vertex(p_index);
    if ((f.eval(p) - p).norm() > tol().algebraic * std::max(1.0, p.norm()))
        throw VertexNotFixed();
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) {
        Vector x = sample_uniform(s, rng);
        double disp = (f.eval(x) - x).norm();
        if (disp > xi * (x - p).norm() + 1e-9) return false;
    }
    return true;
}

}  // namespace tricert
