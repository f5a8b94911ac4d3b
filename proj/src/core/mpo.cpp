#include "mpo.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace gibbsline {

using nlohmann::json;

std::vector<int> Mpo::bond_dims() const {
    std::vector<int> dims;
    dims.push_back(sites.empty() ? 1 : static_cast<int>(sites.front()[0].rows()));
    for (const auto& site : sites) dims.push_back(static_cast<int>(site[0].cols()));
    return dims;
}

int Mpo::max_bond() const {
    int best = 1;
    for (int dim : bond_dims()) best = std::max(best, dim);
    return best;
}

void Mpo::check_consistent() const {
    if (sites.empty()) throw std::invalid_argument("MPO has no sites");
    Eigen::Index prev = sites.front()[0].rows();
    if (prev != 1) throw std::invalid_argument("MPO left boundary dimension is not 1");
    for (const auto& site : sites) {
        if (static_cast<int>(site.size()) != d * d)
            throw std::invalid_argument("MPO site does not carry d^2 bond matrices");
        for (const auto& m : site)
            if (m.rows() != site[0].rows() || m.cols() != site[0].cols())
                throw std::invalid_argument("MPO site tensors have inconsistent shapes");
        if (site[0].rows() != prev)
            throw std::invalid_argument("MPO bond dimension mismatch between sites");
        prev = site[0].cols();
    }
    if (prev != 1) throw std::invalid_argument("MPO right boundary dimension is not 1");
}

Mpo mpo_identity(int n_sites, int d) {
    Mpo m;
    m.d = d;
    m.sites.resize(n_sites);
    for (auto& site : m.sites) {
        site.resize(d * d, Matrix::Zero(1, 1));
        for (int r = 0; r < d; ++r) site[r * d + r] = Matrix::Constant(1, 1, 1.0);
    }
    return m;
}

Complex mpo_trace(const Mpo& m, std::uint64_t* op_count) {
    m.check_consistent();
    const int d = m.d;
    std::uint64_t ops = 0;
    Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
    for (const auto& site : m.sites) {
        const Eigen::Index dl = site[0].rows(), dr = site[0].cols();
        Matrix partial = Matrix::Zero(dl, dr);
        for (int r = 0; r < d; ++r) partial += site[r * d + r];
        v = (v * partial).eval();
        ops += static_cast<std::uint64_t>(dl) * dr * (d + 2);
    }
    if (op_count) *op_count = ops;
    return v(0);
}

double mpo_log_trace(const Mpo& m) {
    m.check_consistent();
    const int d = m.d;
    double log_prefactor = 0.0;
    Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
    for (const auto& site : m.sites) {
        Matrix partial = Matrix::Zero(site[0].rows(), site[0].cols());
        for (int r = 0; r < d; ++r) partial += site[r * d + r];
        v = (v * (partial / static_cast<double>(d))).eval();
        log_prefactor += std::log(static_cast<double>(d));
        const double scale = v.cwiseAbs().maxCoeff();
        if (scale > 0 && (scale > 1e100 || scale < 1e-100)) {
            v /= scale;
            log_prefactor += std::log(scale);
        }
    }
    const Complex t = v(0);
    if (!(t.real() > 0) || std::abs(t.imag()) > 1e-8 * t.real())
        throw NumericError("MPO trace estimate is not positive");
    return log_prefactor + std::log(t.real());
}

namespace {

long long pow_ll(int base, int exp) {
    long long out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

struct TruncatedSvd {
    Matrix u;       // rows x k
    Matrix sv_adj;  // k x cols, already scaled by singular values
    int rank;
};

TruncatedSvd truncated_svd(const Matrix& m, double svd_tol, long max_bond) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = svd_tol * (sv.size() > 0 ? sv(0) : 0.0);
    int k = 0;
    for (Eigen::Index j = 0; j < sv.size(); ++j)
        if (sv(j) > cutoff || j == 0) ++k;
        else break;
    if (max_bond > 0) k = std::min<long>(k, max_bond);
    k = std::max(k, 1);
    TruncatedSvd out;
    out.u = svd.matrixU().leftCols(k);
    out.sv_adj = sv.head(k).asDiagonal() * Matrix(svd.matrixV().leftCols(k).adjoint());
    out.rank = k;
    return out;
}

}  // namespace

Mpo dense_to_mpo(const DenseOperator& a, double svd_tol, long max_bond) {
    const int n = a.n_sites, d = a.d;
    const long long dim = checked_dim(d, n);
    if (a.matrix.rows() != dim || a.matrix.cols() != dim)
        throw std::invalid_argument("dense_to_mpo: matrix dimension does not match d^n");
    if (svd_tol < 0) throw std::invalid_argument("dense_to_mpo: svd_tol must be >= 0");
    const int dd = d * d;

    // Regroup A[(r1..rn),(s1..sn)] into the site-pair order (r1 s1)(r2 s2)...,
    // site 1 major throughout.
    std::vector<Complex> cur(static_cast<size_t>(dim) * dim);
    for (long long row = 0; row < dim; ++row) {
        for (long long col = 0; col < dim; ++col) {
            long long idx = 0, r = row, s = col;
            long long rdiv = dim / d, sdiv = dim / d;
            for (int site = 0; site < n; ++site) {
                const int ri = static_cast<int>(r / rdiv), si = static_cast<int>(s / sdiv);
                r %= rdiv;
                s %= sdiv;
                rdiv /= d;
                sdiv /= d;
                idx = idx * dd + (ri * d + si);
            }
            cur[idx] = a.matrix(row, col);
        }
    }

    Mpo out;
    out.d = d;
    out.sites.resize(n);
    long long rows = dd, cols = dim * dim / dd;
    int dprev = 1;
    for (int site = 0; site < n - 1; ++site) {
        Matrix block(rows, cols);
        for (long long i = 0; i < rows; ++i)
            for (long long j = 0; j < cols; ++j) block(i, j) = cur[i * cols + j];
        TruncatedSvd svd = truncated_svd(block, svd_tol, max_bond);
        auto& tensors = out.sites[site];
        tensors.assign(dd, Matrix::Zero(dprev, svd.rank));
        for (int a_left = 0; a_left < dprev; ++a_left)
            for (int p = 0; p < dd; ++p)
                for (int al = 0; al < svd.rank; ++al)
                    tensors[p](a_left, al) = svd.u(a_left * dd + p, al);
        // Carry sigma V^dagger forward and expose the next site pair as rows.
        const long long next_cols = cols / dd;
        cur.assign(static_cast<size_t>(svd.rank) * dd * next_cols, Complex(0, 0));
        for (int al = 0; al < svd.rank; ++al)
            for (long long c = 0; c < cols; ++c) {
                const long long p = c / next_cols, rest = c % next_cols;
                cur[(al * dd + p) * next_cols + rest] = svd.sv_adj(al, c);
            }
        dprev = svd.rank;
        rows = static_cast<long long>(dprev) * dd;
        cols = next_cols;
    }
    auto& last = out.sites[n - 1];
    last.assign(dd, Matrix::Zero(dprev, 1));
    for (int a_left = 0; a_left < dprev; ++a_left)
        for (int p = 0; p < dd; ++p) last[p](a_left, 0) = cur[a_left * dd + p];
    return out;
}

DenseOperator mpo_to_dense(const Mpo& m) {
    m.check_consistent();
    const int n = m.n_sites(), d = m.d, dd = d * d;
    const long long dim = checked_dim(d, n);
    // env rows enumerate processed site pairs (site-major), cols the open bond.
    Matrix env = Matrix::Ones(1, 1);
    for (const auto& site : m.sites) {
        const Eigen::Index dr = site[0].cols();
        Matrix next(env.rows() * dd, dr);
        for (Eigen::Index row = 0; row < env.rows(); ++row)
            for (int p = 0; p < dd; ++p)
                next.row(row * dd + p) = env.row(row) * site[p];
        env = std::move(next);
    }
    DenseOperator out{n, d, Matrix::Zero(dim, dim)};
    for (long long idx = 0; idx < dim * dim; ++idx) {
        long long row = 0, col = 0, rest = idx;
        for (int site = n - 1; site >= 0; --site) {
            const long long p = rest % dd;
            rest /= dd;
            row += (p / d) * pow_ll(d, n - 1 - site);
            col += (p % d) * pow_ll(d, n - 1 - site);
        }
        out.matrix(row, col) = env(idx, 0);
    }
    return out;
}

void apply_two_site_gate(Mpo& m, const Matrix& gate, int i, double svd_tol,
                         long max_bond) {
    const int d = m.d, dd = d * d;
    if (i < 1 || i + 1 > m.n_sites())
        throw std::invalid_argument("apply_two_site_gate: bond out of range");
    if (gate.rows() != dd || gate.cols() != dd)
        throw std::invalid_argument("apply_two_site_gate: gate must be d^2 x d^2");
    auto& left = m.sites[i - 1];
    auto& right = m.sites[i];
    const Eigen::Index dl = left[0].rows(), dr = right[0].cols();

    // Theta rows (dl, p_left), cols (p_right, dr); gate contracts the row
    // (ket) indices of both sites.
    Matrix theta = Matrix::Zero(dl * dd, dd * dr);
    for (int r1 = 0; r1 < d; ++r1)
        for (int s1 = 0; s1 < d; ++s1)
            for (int r2 = 0; r2 < d; ++r2)
                for (int s2 = 0; s2 < d; ++s2) {
                    Matrix block = Matrix::Zero(dl, dr);
                    for (int q1 = 0; q1 < d; ++q1)
                        for (int q2 = 0; q2 < d; ++q2) {
                            const Complex g = gate(r1 * d + r2, q1 * d + q2);
                            if (g != Complex(0, 0))
                                block += g * (left[q1 * d + s1] * right[q2 * d + s2]);
                        }
                    theta.block((r1 * d + s1) * dl, (r2 * d + s2) * dr, dl, dr) = block;
                }
    // Reorder rows to (a, p_left) with a slow for the SVD cut.
    Matrix cut(dl * dd, dd * dr);
    for (int p = 0; p < dd; ++p)
        for (Eigen::Index a = 0; a < dl; ++a) cut.row(a * dd + p) = theta.row(p * dl + a);
    TruncatedSvd svd = truncated_svd(cut, svd_tol, max_bond);
    left.assign(dd, Matrix::Zero(dl, svd.rank));
    for (Eigen::Index a = 0; a < dl; ++a)
        for (int p = 0; p < dd; ++p)
            for (int al = 0; al < svd.rank; ++al) left[p](a, al) = svd.u(a * dd + p, al);
    right.assign(dd, Matrix::Zero(svd.rank, dr));
    for (int al = 0; al < svd.rank; ++al)
        for (int p = 0; p < dd; ++p)
            for (Eigen::Index b = 0; b < dr; ++b)
                right[p](al, b) = svd.sv_adj(al, p * dr + b);
}

std::string mpo_to_json(const Mpo& m) {
    m.check_consistent();
    json doc;
    doc["n_sites"] = m.n_sites();
    doc["d"] = m.d;
    doc["bond_dims"] = m.bond_dims();
    json tensors = json::array();
    for (const auto& site : m.sites) {
        const Eigen::Index dl = site[0].rows(), dr = site[0].cols();
        json entry;
        entry["shape"] = {dl, m.d, m.d, dr};
        json data = json::array();
        for (Eigen::Index a = 0; a < dl; ++a)
            for (int r = 0; r < m.d; ++r)
                for (int s = 0; s < m.d; ++s)
                    for (Eigen::Index b = 0; b < dr; ++b) {
                        const Complex z = site[r * m.d + s](a, b);
                        data.push_back({z.real(), z.imag()});
                    }
        entry["data"] = std::move(data);
        tensors.push_back(std::move(entry));
    }
    doc["tensors"] = std::move(tensors);
    return doc.dump();
}

Mpo mpo_from_json(const std::string& text) {
    json doc = json::parse(text);
    Mpo m;
    m.d = doc.at("d").get<int>();
    const int n = doc.at("n_sites").get<int>();
    const auto& tensors = doc.at("tensors");
    if (static_cast<int>(tensors.size()) != n)
        throw std::invalid_argument("mpo_from_json: tensor count does not match n_sites");
    m.sites.resize(n);
    for (int i = 0; i < n; ++i) {
        const auto& entry = tensors.at(i);
        const auto& shape = entry.at("shape");
        const Eigen::Index dl = shape.at(0).get<Eigen::Index>(),
                           dr = shape.at(3).get<Eigen::Index>();
        if (shape.at(1).get<int>() != m.d || shape.at(2).get<int>() != m.d)
            throw std::invalid_argument("mpo_from_json: physical dimension mismatch");
        const auto& data = entry.at("data");
        if (static_cast<Eigen::Index>(data.size()) != dl * m.d * m.d * dr)
            throw std::invalid_argument("mpo_from_json: data length mismatch");
        m.sites[i].assign(m.d * m.d, Matrix::Zero(dl, dr));
        size_t pos = 0;
        for (Eigen::Index a = 0; a < dl; ++a)
            for (int r = 0; r < m.d; ++r)
                for (int s = 0; s < m.d; ++s)
                    for (Eigen::Index b = 0; b < dr; ++b, ++pos)
                        m.sites[i][r * m.d + s](a, b) =
                            Complex(data.at(pos).at(0).get<double>(),
                                    data.at(pos).at(1).get<double>());
    }
    m.check_consistent();
    return m;
}

}  // namespace gibbsline
