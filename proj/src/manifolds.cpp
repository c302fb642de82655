#include "tricert/manifolds.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace tricert {

Flat TestManifold::normal_flat(const Vector& p) const { return tangent_flat(p).complement(); }

Vector TestManifold::outward_normal(const Vector& p) const {
    if (ambient_dim() != intrinsic_dim() + 1)
        throw BadDimension("outward normal needs codimension 1");
    return normal_flat(p).basis().col(0);  // sign convention refined by subclasses
}

Matrix TestManifold::projection_jacobian(const Vector& x) const {
    const int N = ambient_dim();
    double h = 1e-6 * std::max(1.0, x.norm());
    Matrix J(N, N);
    Vector xp, xm;
    for (int i = 0; i < N; ++i) {
        xp = x;
        xm = x;
        xp(i) += h;
        xm(i) -= h;
        J.col(i) = (closest_point(xp).point_on_M - closest_point(xm).point_on_M) / (2 * h);
    }
    return J;
}

double TestManifold::min_local_reach_in_ball(const Vector& c, double radius) const {
    // generic 1-Lipschitz fallback through the projection of the center
    ProjectionResult pr = closest_point(c);
    return std::max(0.0, lfs(pr.point_on_M) - pr.distance - radius);
}

// --- sphere shell ---------------------------------------------------------------

namespace {

class SphereShell : public TestManifold {
  public:
    SphereShell(int m, int N, double radius, std::string label)
        : m_(m), N_(N), r_(radius), label_(std::move(label)) {
        if (m < 1 || N < m + 1) throw BadRecipe("sphere shell needs 1 <= m <= N-1");
        if (!(radius > 0)) throw BadRecipe("sphere radius must be positive");
    }

    int intrinsic_dim() const override { return m_; }
    int ambient_dim() const override { return N_; }
    std::string spec_string() const override { return label_; }

    ProjectionResult closest_point(const Vector& x) const override {
        check_dim(x);
        double rho = head_norm(x);
        if (rho <= tol().medial_axis * r_) throw OnMedialAxis("sphere: center/axis point");
        Vector p = Vector::Zero(N_);
        p.head(m_ + 1) = (r_ / rho) * x.head(m_ + 1);
        double tail2 = x.size() > m_ + 1 ? x.tail(N_ - m_ - 1).squaredNorm() : 0.0;
        double d = std::sqrt((rho - r_) * (rho - r_) + tail2);
        return {std::move(p), d, d < r_};
    }

    double on_manifold_residual(const Vector& p) const override {
        check_dim(p);
        double res = std::abs(head_norm(p) - r_);
        if (N_ > m_ + 1) res = std::max(res, p.tail(N_ - m_ - 1).cwiseAbs().maxCoeff());
        return res;
    }

    Flat tangent_flat(const Vector& p) const override {
        require_on(p);
        Vector n = p.head(m_ + 1) / head_norm(p);
        // Householder: orthonormal basis of the head subspace orthogonal to n
        Matrix H = Matrix::Identity(m_ + 1, m_ + 1);
        Vector w = n;
        w(0) += (n(0) >= 0 ? 1.0 : -1.0);
        H -= (2.0 / w.squaredNorm()) * (w * w.transpose());
        Matrix B = Matrix::Zero(N_, m_);
        B.topRows(m_ + 1) = H.rightCols(m_);
        return Flat(p, std::move(B));
    }

    double lfs(const Vector&) const override { return r_; }
    double local_reach(const Vector&) const override { return r_; }
    double reach() const override { return r_; }
    double dist_to_medial_axis(const Vector& x) const override {
        check_dim(x);
        return head_norm(x);
    }
    double min_local_reach_in_ball(const Vector&, double) const override { return r_; }

    Vector outward_normal(const Vector& p) const override {
        if (N_ != m_ + 1) throw BadDimension("outward normal needs codimension 1");
        require_on(p);
        return p / p.norm();
    }

    Vector sample_point(Rng& rng) const override {
        Vector u(m_ + 1);
        double n2 = 0;
        do {
            for (int i = 0; i <= m_; ++i) u(i) = rng.normal();
            n2 = u.squaredNorm();
        } while (n2 < 1e-12);
        Vector p = Vector::Zero(N_);
        p.head(m_ + 1) = (r_ / std::sqrt(n2)) * u;
        return p;
    }

    Matrix projection_jacobian(const Vector& x) const override {
        check_dim(x);
        double rho = head_norm(x);
        if (rho <= tol().medial_axis * r_) throw OnMedialAxis();
        Vector n = x.head(m_ + 1) / rho;
        Matrix J = Matrix::Zero(N_, N_);
        J.topLeftCorner(m_ + 1, m_ + 1) =
            (r_ / rho) * (Matrix::Identity(m_ + 1, m_ + 1) - n * n.transpose());
        return J;
    }

    int param_dim() const override { return m_; }
    Vector param_point(int, const Vector& th) const override {
        Vector p = Vector::Zero(N_);
        if (m_ == 1) {
            p(0) = r_ * std::cos(th(0));
            p(1) = r_ * std::sin(th(0));
        } else if (m_ == 2) {
            p(0) = r_ * std::sin(th(0)) * std::cos(th(1));
            p(1) = r_ * std::sin(th(0)) * std::sin(th(1));
            p(2) = r_ * std::cos(th(0));
        } else {
            throw BadDimension("sphere parametrization implemented for m <= 2");
        }
        return p;
    }
    Matrix param_jacobian(int, const Vector& th) const override {
        Matrix J = Matrix::Zero(N_, m_);
        if (m_ == 1) {
            J(0, 0) = -r_ * std::sin(th(0));
            J(1, 0) = r_ * std::cos(th(0));
        } else if (m_ == 2) {
            J(0, 0) = r_ * std::cos(th(0)) * std::cos(th(1));
            J(1, 0) = r_ * std::cos(th(0)) * std::sin(th(1));
            J(2, 0) = -r_ * std::sin(th(0));
            J(0, 1) = -r_ * std::sin(th(0)) * std::sin(th(1));
            J(1, 1) = r_ * std::sin(th(0)) * std::cos(th(1));
            J(2, 1) = 0;
        } else {
            throw BadDimension("sphere parametrization implemented for m <= 2");
        }
        return J;
    }
    std::vector<std::pair<int, Vector>> param_starts(int per_dim) const override {
        std::vector<std::pair<int, Vector>> out;
        if (m_ == 1) {
            for (int i = 0; i < per_dim; ++i) {
                Vector th(1);
                th(0) = 2 * M_PI * (i + 0.5) / per_dim;
                out.push_back({0, th});
            }
        } else {
            for (int i = 0; i < per_dim; ++i)
                for (int j = 0; j < per_dim; ++j) {
                    Vector th(2);
                    th(0) = M_PI * (i + 0.5) / per_dim;
                    th(1) = 2 * M_PI * (j + 0.5) / per_dim;
                    out.push_back({0, th});
                }
        }
        return out;
    }

  private:
    int m_, N_;
    double r_;
    std::string label_;

    double head_norm(const Vector& x) const { return x.head(m_ + 1).norm(); }
    void check_dim(const Vector& x) const {
        if (x.size() != N_) throw DimensionMismatch("sphere shell point dim");
    }
    void require_on(const Vector& p) const {
        check_dim(p);
        if (on_manifold_residual(p) > tol().geometric * std::max(1.0, r_))
            throw PointNotOnManifold();
    }
};

// --- torus ----------------------------------------------------------------------

class Torus : public TestManifold {
  public:
    Torus(double R, double r) : R_(R), r_(r) {
        if (!(R > 0) || !(r > 0) || !(R > r)) throw BadRecipe("torus needs R > r > 0");
    }

    int intrinsic_dim() const override { return 2; }
    int ambient_dim() const override { return 3; }
    std::string spec_string() const override {
        std::ostringstream os;
        os << "torus:" << R_ << "," << r_;
        return os.str();
    }

    ProjectionResult closest_point(const Vector& x) const override {
        check_dim(x);
        double rho = std::hypot(x(0), x(1));
        if (rho <= tol().medial_axis * r_) throw OnMedialAxis("torus: axis point");
        Vector c(3);
        c << R_ * x(0) / rho, R_ * x(1) / rho, 0.0;
        Vector u = x - c;
        double un = u.norm();
        if (un <= tol().medial_axis * r_) throw OnMedialAxis("torus: core circle point");
        Vector p = c + (r_ / un) * u;
        double d = std::abs(un - r_);
        return {std::move(p), d, d < lfs_at(rho_of_point(p))};
    }

    double on_manifold_residual(const Vector& p) const override {
        check_dim(p);
        double rho = std::hypot(p(0), p(1));
        return std::abs(std::hypot(rho - R_, p(2)) - r_);
    }

    Flat tangent_flat(const Vector& p) const override {
        require_on(p);
        double rho = std::hypot(p(0), p(1));
        double cphi = p(0) / rho, sphi = p(1) / rho;
        // tube angle from the radial section
        double cpsi = (rho - R_) / r_, spsi = p(2) / r_;
        double nn = std::hypot(cpsi, spsi);
        cpsi /= nn;
        spsi /= nn;
        Matrix B(3, 2);
        B.col(0) << -sphi, cphi, 0.0;                       // along the core circle
        B.col(1) << -spsi * cphi, -spsi * sphi, cpsi;       // along the tube section
        return Flat(p, std::move(B));
    }

    double lfs(const Vector& y) const override {
        require_on(y);
        return lfs_at(std::hypot(y(0), y(1)));
    }

    double local_reach(const Vector& y) const override {
        require_on(y);
        double rho = std::hypot(y(0), y(1));
        double cpsi = (rho - R_) / r_;
        return local_reach_at_cpsi(cpsi);
    }

    double reach() const override { return std::min(r_, R_ - r_); }

    double dist_to_medial_axis(const Vector& x) const override {
        check_dim(x);
        double rho = std::hypot(x(0), x(1));
        double to_core = std::hypot(rho - R_, x(2));
        return std::min(rho, to_core);
    }

    Vector outward_normal(const Vector& p) const override {
        require_on(p);
        double rho = std::hypot(p(0), p(1));
        Vector c(3);
        c << R_ * p(0) / rho, R_ * p(1) / rho, 0.0;
        return (p - c).normalized();
    }

    double min_local_reach_in_ball(const Vector& c, double radius) const override {
        check_dim(c);
        double rho_c = std::hypot(c(0), c(1));
        const int n = 4096;
        double best = std::numeric_limits<double>::infinity();
        double step = 2 * M_PI / n;
        // distance from c to the circle of tube angle psi is closed-form; the
        // local reach along psi has slope <= 4 r^2 / R where it is not constant
        double slack = step * (r_ + rho_c);
        double lip = step * (4 * r_ * r_ / R_ + r_);
        for (int i = 0; i < n; ++i) {
            double psi = step * i;
            double rr = R_ + r_ * std::cos(psi), zz = r_ * std::sin(psi);
            double d = std::hypot(rho_c - rr, c(2) - zz);
            if (d <= radius + slack) best = std::min(best, local_reach_at_cpsi(std::cos(psi)) - lip);
        }
        return std::max(0.0, best == std::numeric_limits<double>::infinity() ? 0.0 : best);
    }

    Vector sample_point(Rng& rng) const override {
        // area element is proportional to R + r cos(psi); rejection sample
        double psi;
        for (;;) {
            psi = rng.uniform(0.0, 2 * M_PI);
            if (rng.uniform(0.0, R_ + r_) <= R_ + r_ * std::cos(psi)) break;
        }
        double phi = rng.uniform(0.0, 2 * M_PI);
        return point_at(phi, psi);
    }

    Matrix projection_jacobian(const Vector& x) const override {
        check_dim(x);
        double rho = std::hypot(x(0), x(1));
        if (rho <= tol().medial_axis * r_) throw OnMedialAxis();
        Vector chat(3);
        chat << x(0) / rho, x(1) / rho, 0.0;
        Matrix Exy = Matrix::Zero(3, 3);
        Exy(0, 0) = Exy(1, 1) = 1.0;
        Matrix Dc = (R_ / rho) * (Exy - chat * chat.transpose());
        Vector c = R_ * chat;
        Vector u = x - c;
        double un = u.norm();
        if (un <= tol().medial_axis * r_) throw OnMedialAxis();
        Vector uhat = u / un;
        Matrix Du = Matrix::Identity(3, 3) - Dc;
        return Dc + (r_ / un) * (Matrix::Identity(3, 3) - uhat * uhat.transpose()) * Du;
    }

    int param_dim() const override { return 2; }
    Vector param_point(int, const Vector& th) const override { return point_at(th(0), th(1)); }
    Matrix param_jacobian(int, const Vector& th) const override {
        double phi = th(0), psi = th(1);
        Matrix J(3, 2);
        J.col(0) << -(R_ + r_ * std::cos(psi)) * std::sin(phi),
            (R_ + r_ * std::cos(psi)) * std::cos(phi), 0.0;
        J.col(1) << -r_ * std::sin(psi) * std::cos(phi), -r_ * std::sin(psi) * std::sin(phi),
            r_ * std::cos(psi);
        return J;
    }
    std::vector<std::pair<int, Vector>> param_starts(int per_dim) const override {
        std::vector<std::pair<int, Vector>> out;
        for (int i = 0; i < per_dim; ++i)
            for (int j = 0; j < per_dim; ++j) {
                Vector th(2);
                th(0) = 2 * M_PI * (i + 0.5) / per_dim;
                th(1) = 2 * M_PI * (j + 0.5) / per_dim;
                out.push_back({0, th});
            }
        return out;
    }

    Vector point_at(double phi, double psi) const {
        Vector p(3);
        p << (R_ + r_ * std::cos(psi)) * std::cos(phi), (R_ + r_ * std::cos(psi)) * std::sin(phi),
            r_ * std::sin(psi);
        return p;
    }

  private:
    double R_, r_;

    double rho_of_point(const Vector& p) const { return std::hypot(p(0), p(1)); }
    double lfs_at(double rho) const { return std::min(r_, rho); }
    double local_reach_at_cpsi(double cpsi) const {
        if (cpsi >= 0.0) return r_;
        return std::min(r_, R_ / (-cpsi) - r_);
    }
    void check_dim(const Vector& x) const {
        if (x.size() != 3) throw DimensionMismatch("torus point dim");
    }
    void require_on(const Vector& p) const {
        check_dim(p);
        if (on_manifold_residual(p) > tol().geometric * std::max(1.0, r_)) throw PointNotOnManifold();
    }
};

// --- bisphere -------------------------------------------------------------------

class BiSphere : public TestManifold {
  public:
    BiSphere(double radius, double gap) : r_(radius), gap_(gap) {
        if (!(radius > 0) || !(gap > 0)) throw BadRecipe("bisphere needs radius > 0, gap > 0");
        cx_ = radius + gap / 2;
    }

    int intrinsic_dim() const override { return 2; }
    int ambient_dim() const override { return 3; }
    std::string spec_string() const override {
        std::ostringstream os;
        os << "bisphere:" << r_ << "," << gap_;
        return os.str();
    }

    ProjectionResult closest_point(const Vector& x) const override {
        check_dim(x);
        double dm = (x - center(0)).norm(), dp = (x - center(1)).norm();
        double sm = std::abs(dm - r_), sp = std::abs(dp - r_);
        if (std::abs(sm - sp) <= tol().medial_axis * r_)
            throw OnMedialAxis("bisphere: bisector plane");
        int side = sm < sp ? 0 : 1;
        double d = side == 0 ? dm : dp;
        if (d <= tol().medial_axis * r_) throw OnMedialAxis("bisphere: sphere center");
        Vector p = center(side) + (r_ / d) * (x - center(side));
        double dist = std::abs(d - r_);
        return {std::move(p), dist, dist < lfs_unchecked(p)};
    }

    double on_manifold_residual(const Vector& p) const override {
        check_dim(p);
        return std::min(std::abs((p - center(0)).norm() - r_), std::abs((p - center(1)).norm() - r_));
    }

    Flat tangent_flat(const Vector& p) const override {
        require_on(p);
        int side = side_of(p);
        Vector n = (p - center(side)).normalized();
        Matrix H = Matrix::Identity(3, 3);
        Vector w = n;
        w(0) += (n(0) >= 0 ? 1.0 : -1.0);
        H -= (2.0 / w.squaredNorm()) * (w * w.transpose());
        return Flat(p, H.rightCols(2));
    }

    double lfs(const Vector& y) const override {
        require_on(y);
        return lfs_unchecked(y);
    }

    double local_reach(const Vector& y) const override {
        require_on(y);
        int side = side_of(y);
        Vector u = (y - center(side)) / r_;
        double s_plane = std::numeric_limits<double>::infinity();
        if (std::abs(u(0)) > 1e-15 && (y(0) > 0) != (u(0) > 0)) s_plane = -y(0) / u(0);
        return std::min(r_, s_plane);
    }

    double reach() const override { return std::min(r_, gap_ / 2); }

    double dist_to_medial_axis(const Vector& x) const override {
        check_dim(x);
        return std::min({std::abs(x(0)), (x - center(0)).norm(), (x - center(1)).norm()});
    }

    double min_local_reach_in_ball(const Vector& c, double radius) const override {
        check_dim(c);
        // rch(y) >= min(r, |y_0|); over the ball |y_0| >= |c_0| - radius
        return std::min(r_, std::max(0.0, std::abs(c(0)) - radius));
    }

    int n_components() const override { return 2; }
    int component_of(const Vector& p) const override { return side_of(p); }

    Vector outward_normal(const Vector& p) const override {
        require_on(p);
        return (p - center(side_of(p))).normalized();
    }

    Vector sample_point(Rng& rng) const override {
        int side = rng.uniform() < 0.5 ? 0 : 1;
        Vector u(3);
        double n2 = 0;
        do {
            for (int i = 0; i < 3; ++i) u(i) = rng.normal();
            n2 = u.squaredNorm();
        } while (n2 < 1e-12);
        return center(side) + (r_ / std::sqrt(n2)) * u;
    }

    Matrix projection_jacobian(const Vector& x) const override {
        check_dim(x);
        double dm = (x - center(0)).norm(), dp = (x - center(1)).norm();
        int side = std::abs(dm - r_) < std::abs(dp - r_) ? 0 : 1;
        double d = side == 0 ? dm : dp;
        Vector n = (x - center(side)) / d;
        return (r_ / d) * (Matrix::Identity(3, 3) - n * n.transpose());
    }

    int param_dim() const override { return 2; }
    int n_param_charts() const override { return 2; }
    Vector param_point(int chart, const Vector& th) const override {
        Vector p(3);
        p << r_ * std::sin(th(0)) * std::cos(th(1)), r_ * std::sin(th(0)) * std::sin(th(1)),
            r_ * std::cos(th(0));
        // chart selects the sphere; keep x as the last coordinate convention
        Vector q(3);
        q << p(2) + (chart == 0 ? -cx_ : cx_), p(0), p(1);
        return q;
    }
    Matrix param_jacobian(int, const Vector& th) const override {
        Matrix J(3, 2);
        // d/dtheta of the rotated spherical map above
        J.col(0) << -r_ * std::sin(th(0)), r_ * std::cos(th(0)) * std::cos(th(1)),
            r_ * std::cos(th(0)) * std::sin(th(1));
        J.col(1) << 0.0, -r_ * std::sin(th(0)) * std::sin(th(1)),
            r_ * std::sin(th(0)) * std::cos(th(1));
        return J;
    }
    std::vector<std::pair<int, Vector>> param_starts(int per_dim) const override {
        std::vector<std::pair<int, Vector>> out;
        for (int chart = 0; chart < 2; ++chart)
            for (int i = 0; i < per_dim; ++i)
                for (int j = 0; j < per_dim; ++j) {
                    Vector th(2);
                    th(0) = M_PI * (i + 0.5) / per_dim;
                    th(1) = 2 * M_PI * (j + 0.5) / per_dim;
                    out.push_back({chart, th});
                }
        return out;
    }

  private:
    double r_, gap_, cx_;

    Vector center(int side) const {
        Vector c = Vector::Zero(3);
        c(0) = side == 0 ? -cx_ : cx_;
        return c;
    }
    int side_of(const Vector& p) const { return p(0) < 0 ? 0 : 1; }
    double lfs_unchecked(const Vector& y) const { return std::min(r_, std::abs(y(0))); }
    void check_dim(const Vector& x) const {
        if (x.size() != 3) throw DimensionMismatch("bisphere point dim");
    }
    void require_on(const Vector& p) const {
        check_dim(p);
        if (on_manifold_residual(p) > tol().geometric * std::max(1.0, r_)) throw PointNotOnManifold();
    }
};

}  // namespace

std::unique_ptr<TestManifold> make_sphere_shell(int m, int N, double radius) {
    std::ostringstream os;
    os << "sphere:" << m << "," << N << "," << radius;
    return std::make_unique<SphereShell>(m, N, radius, os.str());
}
std::unique_ptr<TestManifold> make_torus(double R_major, double r_minor) {
    return std::make_unique<Torus>(R_major, r_minor);
}
std::unique_ptr<TestManifold> make_circle(double radius) {
    std::ostringstream os;
    os << "circle:" << radius;
    return std::make_unique<SphereShell>(1, 2, radius, os.str());
}
std::unique_ptr<TestManifold> make_bisphere(double radius, double gap) {
    return std::make_unique<BiSphere>(radius, gap);
}

std::unique_ptr<TestManifold> TestManifold::parse(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::string rest = spec.substr(colon + 1);
        std::istringstream is(rest);
        std::string tokenized;
        while (std::getline(is, tokenized, ',')) {
            try {
                args.push_back(std::stod(tokenized));
            } catch (...) {
                throw BadRecipe("manifold spec: bad number '" + tokenized + "'");
            }
        }
    }
    if (kind == "sphere") {
        if (args.size() != 3) throw BadRecipe("sphere:m,N,radius");
        return make_sphere_shell(int(args[0]), int(args[1]), args[2]);
    }
    if (kind == "torus") {
        if (args.size() != 2) throw BadRecipe("torus:R,r");
        return make_torus(args[0], args[1]);
    }
    if (kind == "circle") {
        if (args.size() != 1) throw BadRecipe("circle:radius");
        return make_circle(args[0]);
    }
    if (kind == "bisphere") {
        if (args.size() != 2) throw BadRecipe("bisphere:radius,gap");
        return make_bisphere(args[0], args[1]);
    }
    throw BadRecipe("unknown manifold '" + kind + "' (sphere, torus, circle, bisphere)");
}

ReachInfo reach_and_lfs(const TestManifold& M) {
    ReachInfo info;
    info.reach_global = M.reach();
    info.lfs_at = [&M](const Vector& y) { return M.lfs(y); };
    info.local_reach_lower = [&M](const Vector& c, double radius) {
        return M.min_local_reach_in_ball(c, radius);
    };
    return info;
}

ProjectionResult closest_point_newton(const TestManifold& M, const Vector& x, int starts_per_dim) {
    double best = std::numeric_limits<double>::infinity();
    Vector best_p;
    for (auto& [chart, th0] : M.param_starts(starts_per_dim)) {
        Vector th = th0;
        for (int it = 0; it < 80; ++it) {
            Vector p = M.param_point(chart, th);
            Vector r = x - p;
            Matrix J = M.param_jacobian(chart, th);
            Vector step = (J.transpose() * J).ldlt().solve(J.transpose() * r);
            if (!step.allFinite()) break;
            th += step;
            if (step.norm() < 1e-13) break;
        }
        Vector p = M.param_point(chart, th);
        double d = (x - p).norm();
        if (d < best) {
            best = d;
            best_p = p;
        }
    }
    return {best_p, best, true};
}

double r_rch_at(const TestManifold& M, const Vector& p, const RrchChoice& policy) {
    if (policy.policy == RrchPolicy::GlobalReach) return M.reach();
    return (1.0 - policy.epsilon) * M.lfs(p);
}

// --- checks ----------------------------------------------------------------------

TangentDistanceCheck dist_to_tangent_bounds_check(const TestManifold& M, const Vector& x,
                                                  const Vector& y) {
    if (M.on_manifold_residual(x) > tol().geometric || M.on_manifold_residual(y) > tol().geometric)
        throw PointNotOnManifold();
    TangentDistanceCheck out{0, 0, 0, 0};
    double d = (x - y).norm();
    if (d == 0.0) return out;
    double rch = M.local_reach(x);
    Flat T = M.tangent_flat(x);
    out.lhs_sin_angle = std::sin(angle_vector_flat(y - x, T));
    out.rhs_sin_bound = d / (2 * rch);
    out.lhs_dist = T.distance(y);
    out.rhs_dist_bound = d * d / (2 * rch);
    return out;
}

std::pair<Vector, double> require_ball_hypothesis(const TestManifold& M,
                                                  const std::vector<Vector>& pts, double R_rch) {
    if (pts.empty()) throw HypothesisViolated("no points");
    Vector centroid = Vector::Zero(pts[0].size());
    for (const auto& p : pts) centroid += p;
    centroid /= double(pts.size());

    std::vector<Vector> candidates;
    candidates.push_back(centroid);
    try {
        candidates.push_back(M.closest_point(centroid).point_on_M);
    } catch (const OnMedialAxis&) {
    }
    for (const Vector& c : candidates) {
        double r = 0;
        for (const auto& p : pts) r = std::max(r, (p - c).norm());
        r *= 1.0 + 1e-12;
        r += 1e-300;
        if (!(r < R_rch)) continue;
        if (!(M.dist_to_medial_axis(c) > r)) continue;
        if (M.min_local_reach_in_ball(c, r) < R_rch * (1.0 - 1e-12)) continue;
        return {c, r};
    }
    throw HypothesisViolated("no admissible ball for the given R_rch");
}

TangentVariationCheck tangent_variation_check(const TestManifold& M, const Vector& x,
                                              const Vector& y, double R_rch) {
    if (M.on_manifold_residual(x) > tol().geometric || M.on_manifold_residual(y) > tol().geometric)
        throw PointNotOnManifold();
    TangentVariationCheck out{0, 0, 0, 0};
    double d = (y - x).norm();
    if (d == 0.0) return out;
    require_ball_hypothesis(M, {x, y}, R_rch);
    double ang = angle_between_flats(M.tangent_flat(x), M.tangent_flat(y));
    out.angle = ang;
    out.sin_angle = std::sin(ang);
    out.sin_bound = d / R_rch;
    out.angle_bound = M_PI * d / (2 * R_rch);
    return out;
}

std::pair<double, double> whitney_angle_bound_check(const EuclideanSimplex& s, const Flat& K) {
    if (s.dim() > K.dim()) throw DimensionMismatch("whitney: dim simplex > dim K");
    auto q = quality_measures(s);
    if (q.thickness_t < tol().degenerate_thickness) throw DegenerateSimplex();
    double eta = 0;
    for (int i = 0; i <= s.dim(); ++i) eta = std::max(eta, K.distance(s.vertex(i)));
    Flat aff = Flat::subspace(span_orthonormal(s.vertices()));
    Flat Kdir = Flat::subspace(K.basis());
    double lhs = std::sin(angle_between_flats(aff, Kdir));
    double rhs = 2 * eta / (q.thickness_t * q.longest_edge_L);
    return {lhs, rhs};
}

ProximityReport simplex_manifold_proximity(const TestManifold& M, const EuclideanSimplex& s,
                                           double R_rch, int samples, uint64_t seed) {
    for (int i = 0; i <= s.dim(); ++i)
        if (M.on_manifold_residual(s.vertex(i)) > tol().geometric) throw PointNotOnManifold();
    auto q = quality_measures(s);
    ProximityReport rep;
    rep.bound = 2 * q.longest_edge_L * q.longest_edge_L / R_rch;
    rep.vertex_projection_bound = 2 * q.longest_edge_L;

    std::vector<Vector> pts;
    for (int i = 0; i <= s.dim(); ++i) pts.push_back(s.vertex(i));
    pts.push_back(s.barycentre());
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) pts.push_back(sample_uniform(s, rng));

    std::vector<Vector> projections;
    for (const auto& x : pts) {
        ProjectionResult pr;
        try {
            pr = M.closest_point(x);
        } catch (const OnMedialAxis&) {
            throw SimplexLeavesTube();
        }
        if (!pr.inside_tube) throw SimplexLeavesTube();
        rep.max_dist_to_M = std::max(rep.max_dist_to_M, pr.distance);
        projections.push_back(pr.point_on_M);
    }
    for (size_t i = 0; i < pts.size(); ++i) {
        Flat T = M.tangent_flat(projections[i]);
        for (size_t k = 0; k < pts.size(); ++k)
            rep.max_dist_to_tangent = std::max(rep.max_dist_to_tangent, T.distance(pts[k]));
        for (int v = 0; v <= s.dim(); ++v)
            rep.max_vertex_to_projection =
                std::max(rep.max_vertex_to_projection, (s.vertex(v) - projections[i]).norm());
    }
    rep.holds = rep.max_dist_to_M < rep.bound && rep.max_dist_to_tangent < rep.bound &&
                rep.max_vertex_to_projection < rep.vertex_projection_bound;
    return rep;
}

std::pair<double, double> simplex_tangent_angle(const TestManifold& M, const EuclideanSimplex& s,
                                                int p_index, TangentAngleMode mode, double R_rch,
                                                int samples, uint64_t seed) {
    for (int i = 0; i <= s.dim(); ++i)
        if (M.on_manifold_residual(s.vertex(i)) > tol().geometric) throw PointNotOnManifold();
    auto q = quality_measures(s);
    if (q.thickness_t < tol().degenerate_thickness) throw DegenerateSimplex();
    Flat aff = Flat::subspace(span_orthonormal(s.vertices()));

    if (mode == TangentAngleMode::AtVertex) {
        if (p_index < 0 || p_index > s.dim()) throw IndexOutOfRange("simplex_tangent_angle");
        Vector p = s.vertex(p_index);
        double lhs = std::sin(angle_between_flats(aff, Flat::subspace(M.tangent_flat(p).basis())));
        double rhs = q.longest_edge_L / (q.thickness_t * M.local_reach(p));
        return {lhs, rhs};
    }

    Rng rng(seed);
    std::vector<Vector> pts;
    for (int i = 0; i <= s.dim(); ++i) pts.push_back(s.vertex(i));
    pts.push_back(s.barycentre());
    for (int i = 0; i < samples; ++i) pts.push_back(sample_uniform(s, rng));
    std::vector<Vector> projections;
    for (const auto& x : pts) {
        try {
            projections.push_back(M.closest_point(x).point_on_M);
        } catch (const OnMedialAxis&) {
            throw SimplexLeavesTube();
        }
    }
    require_ball_hypothesis(M, projections, R_rch);
    double lhs = 0;
    for (const auto& pr : projections)
        lhs = std::max(lhs,
                       std::sin(angle_between_flats(aff, Flat::subspace(M.tangent_flat(pr).basis()))));
    double rhs = 3 * q.longest_edge_L / (q.thickness_t * R_rch);
    return {lhs, rhs};
}

}  // namespace tricert
