#include "tricert/geom.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace tricert {

// --- parallel utilities (declared in common.hpp) -----------------------------

int worker_threads() {
    static const int n = [] {
        int hw = int(std::thread::hardware_concurrency());
        if (hw < 1) hw = 1;
        if (const char* env = std::getenv("THREADS")) {
            int cap = std::atoi(env);
            if (cap >= 1 && cap < hw) hw = cap;
        }
        return hw;
    }();
    return n;
}

void parallel_chunks(std::int64_t n, const std::function<void(std::int64_t, std::int64_t, int)>& fn,
                     int* n_chunks_out) {
    if (n <= 0) {
        if (n_chunks_out) *n_chunks_out = 0;
        return;
    }
    int nt = worker_threads();
    int chunks = std::min<std::int64_t>(n, std::min(kMaxParallelChunks, nt * 8));
    if (n_chunks_out) *n_chunks_out = chunks;
    if (nt == 1 || chunks == 1) {
        std::int64_t step = (n + chunks - 1) / chunks;
        for (int c = 0; c < chunks; ++c) {
            std::int64_t b = c * step, e = std::min(n, b + step);
            if (b < e) fn(b, e, c);
        }
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error = nullptr;
    std::mutex error_mu;
    std::int64_t step = (n + chunks - 1) / chunks;
    auto worker = [&] {
        try {
            for (;;) {
                int c = next.fetch_add(1);
                if (c >= chunks) return;
                std::int64_t b = c * step, e = std::min(n, b + step);
                if (b < e) fn(b, e, c);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(error_mu);
            if (!first_error) first_error = std::current_exception();
            next.store(chunks);  // drain remaining work
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nt - 1);
    for (int i = 0; i < nt - 1; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
    parallel_chunks(n, [&](std::int64_t b, std::int64_t e, int) {
        for (std::int64_t i = b; i < e; ++i) fn(i);
    });
}

// --- Flat ---------------------------------------------------------------------

namespace {

// Modified Gram-Schmidt with one re-orthogonalization pass.
Matrix orthonormalize(Matrix B) {
    const int k = int(B.cols());
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < k; ++j) {
            for (int i = 0; i < j; ++i) B.col(j) -= B.col(i).dot(B.col(j)) * B.col(i);
            double nrm = B.col(j).norm();
            if (nrm < 1e-13) throw DegenerateSimplex("Flat: rank-deficient basis");
            B.col(j) /= nrm;
        }
    }
    return B;
}

bool is_orthonormal(const Matrix& B, double tolerance) {
    Matrix G = B.transpose() * B;
    G.diagonal().array() -= 1.0;
    return G.cwiseAbs().maxCoeff() <= tolerance;
}

}  // namespace

Flat::Flat(Vector base, Matrix basis) : base_(std::move(base)), basis_(std::move(basis)) {
    if (basis_.size() > 0 && basis_.rows() != base_.size())
        throw DimensionMismatch("Flat: basis rows != ambient dim");
    if (basis_.cols() > basis_.rows()) throw DimensionMismatch("Flat: dim > ambient dim");
    if (basis_.cols() == 0) {
        basis_.resize(base_.size(), 0);
        return;
    }
    if (!basis_.allFinite()) throw Error("Flat: non-finite basis");
    if (!is_orthonormal(basis_, tol().algebraic)) basis_ = orthonormalize(std::move(basis_));
}

Flat Flat::subspace(Matrix basis) {
    Vector origin = Vector::Zero(basis.rows());
    return Flat(std::move(origin), std::move(basis));
}

Flat Flat::line(const Vector& direction) {
    double nrm = direction.norm();
    if (nrm <= 0.0) throw ZeroVector("Flat::line: zero direction");
    Matrix b(direction.size(), 1);
    b.col(0) = direction / nrm;
    return subspace(std::move(b));
}

Vector Flat::project(const Vector& x) const {
    if (x.size() != base_.size()) throw DimensionMismatch("Flat::project");
    if (dim() == 0) return base_;
    return base_ + basis_ * (basis_.transpose() * (x - base_));
}

double Flat::distance(const Vector& x) const { return (x - project(x)).norm(); }

Flat Flat::complement() const {
    const int N = ambient_dim();
    const int k = dim();
    if (k == 0) return Flat(base_, Matrix::Identity(N, N));
    // null space of basis^T via full SVD
    Eigen::JacobiSVD<Matrix> svd(basis_, Eigen::ComputeFullU);
    Matrix U = svd.matrixU();
    return Flat(base_, U.rightCols(N - k));
}

// --- angles -------------------------------------------------------------------

double angle_vector_flat(const Vector& u, const Flat& L) {
    if (u.size() != L.ambient_dim()) throw DimensionMismatch("angle_vector_flat");
    double nrm = u.norm();
    if (nrm <= 0.0) throw ZeroVector("angle_vector_flat: zero vector");
    if (L.dim() == 0) return M_PI / 2.0;
    Vector w = L.basis().transpose() * u;
    double para = w.norm();
    if (para <= 0.0) return M_PI / 2.0;
    Vector perp = u - L.basis() * w;
    return std::atan2(perp.norm(), para);
}

double angle_between_flats(const Flat& K, const Flat& L) {
    if (K.ambient_dim() != L.ambient_dim()) throw DimensionMismatch("angle_between_flats: ambient");
    if (K.dim() > L.dim()) throw DimensionMismatch("angle_between_flats: dim K > dim L");
    if (K.dim() == 0) return 0.0;
    // cos of the largest principal angle: smallest singular value of B_K^T B_L;
    // sin of it: largest singular value of (I - P_L) B_K. atan2 of the pair is
    // accurate at both ends of [0, pi/2].
    Matrix C = K.basis().transpose() * L.basis();
    Eigen::JacobiSVD<Matrix> svd_c(C);
    double c = svd_c.singularValues().minCoeff();
    Matrix S = K.basis() - L.basis() * (L.basis().transpose() * K.basis());
    Eigen::JacobiSVD<Matrix> svd_s(S);
    double s = svd_s.singularValues().maxCoeff();
    c = std::clamp(c, 0.0, 1.0);
    s = std::clamp(s, 0.0, 1.0);
    return std::atan2(s, c);
}

std::pair<double, double> complement_angle_identity_check(const Flat& K, const Flat& L) {
    const int N = K.ambient_dim();
    if (N != L.ambient_dim()) throw DimensionMismatch("complement_angle_identity_check");
    if (K.dim() == L.dim()) {
        double lhs = angle_between_flats(L.complement(), K.complement());
        double rhs = angle_between_flats(K, L);
        return {lhs, rhs};
    }
    if (L.dim() == N - 1) {
        if (K.dim() > L.dim()) throw DimensionMismatch("complement identity: dim K > dim Q");
        double lhs = angle_between_flats(L.complement(), K);
        double rhs = M_PI / 2.0 - angle_between_flats(K, L);
        return {lhs, rhs};
    }
    throw DimensionMismatch("complement identity: need equal dims or codimension-1 L");
}

Vector orthogonal_project(const Vector& x, const Flat& L) { return L.project(x); }

LinearMapSpectrum svd_spectrum(const Matrix& A) {
    if (!A.allFinite()) throw Error("svd_spectrum: non-finite entries");
    Eigen::JacobiSVD<Matrix> svd(A);
    LinearMapSpectrum out;
    const auto& sv = svd.singularValues();
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    out.operator_norm = out.singular_values.empty() ? 0.0 : out.singular_values.front();
    out.min_singular = out.singular_values.empty() ? 0.0 : out.singular_values.back();
    return out;
}

Matrix span_orthonormal(const Matrix& points, double rel_tol) {
    const int n = int(points.cols());
    if (n <= 1) return Matrix(points.rows(), 0);
    Matrix E(points.rows(), n - 1);
    for (int j = 1; j < n; ++j) E.col(j - 1) = points.col(j) - points.col(0);
    Eigen::JacobiSVD<Matrix> svd(E, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    double cutoff = (sv.size() ? sv(0) : 0.0) * rel_tol;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return svd.matrixU().leftCols(rank);
}

}  // namespace tricert
