#include "models.hpp"

#include <fstream>

#include "chain.hpp"
#include "spectral.hpp"

namespace gibbsline {

using nlohmann::json;

namespace {

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

double param(const json& params, const std::string& key, double fallback) {
    if (params.is_object() && params.contains(key)) return params.at(key).get<double>();
    return fallback;
}

}  // namespace

ResolvedModel builtin_model(const std::string& name, const json& params) {
    ResolvedModel out;
    out.name = name;
    const Matrix id = Matrix::Identity(2, 2);
    Matrix raw;
    if (name == "free") {
        const int d = static_cast<int>(param(params, "d", 2));
        raw = Matrix::Zero(d * d, d * d);
        out.term = InteractionTerm::validated(d, raw, &out.warnings);
        return out;
    } else if (name == "ising") {
        const double coupling = param(params, "coupling", 1.0);
        if (std::abs(coupling) > 1.0)
            throw std::invalid_argument("ising: |coupling| must be <= 1");
        raw = -coupling * kron(pauli_z(), pauli_z());
    } else if (name == "tfim") {
        const double j = param(params, "J", 1.0);
        const double g = param(params, "g", 1.0);
        raw = -(j * kron(pauli_z(), pauli_z()) +
                0.5 * g * (kron(pauli_x(), id) + kron(id, pauli_x())));
    } else if (name == "heisenberg") {
        raw = (kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()) +
               kron(pauli_z(), pauli_z())) /
              3.0;
    } else {
        throw std::invalid_argument("unknown builtin model '" + name + "'");
    }
    const double norm = operator_norm(raw);
    if (norm > 1.0) {
        raw /= norm;
        out.renormalization = norm;
    }
    out.term = InteractionTerm::validated(2, raw, &out.warnings);
    return out;
}

ResolvedModel parse_model_json(const json& doc) {
    ResolvedModel out;
    out.name = "file";
    const int d = doc.at("d").get<int>();
    if (d < 2) throw std::invalid_argument("model file: d must be >= 2");
    const auto& rows = doc.at("matrix");
    const int dim = d * d;
    if (static_cast<int>(rows.size()) != dim)
        throw std::invalid_argument("model file: matrix must have d^2 rows");
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const auto& row = rows.at(i);
        if (static_cast<int>(row.size()) != dim)
            throw std::invalid_argument("model file: matrix must have d^2 columns");
        for (int j = 0; j < dim; ++j) {
            const auto& cell = row.at(j);
            m(i, j) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    out.term = InteractionTerm::validated(d, std::move(m), &out.warnings);
    return out;
}

ResolvedModel parse_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("model file '" + path + "' cannot be opened");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("model file '" + path + "': " + e.what());
    }
    return parse_model_json(doc);
}

}  // namespace gibbsline
