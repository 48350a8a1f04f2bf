#include "bellcomm/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bellcomm {

namespace {

Json int_to_json(const Int& v) {
    if (fits_int64(v)) return to_int64(v);
    return v.get_str();
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return int_from_string(j.get<std::string>());
    throw std::invalid_argument("expected an integer or a decimal integer string");
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json re_row = Json::array(), im_row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re_row.push_back(m(r, c).real());
            im_row.push_back(m(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    const auto rows = re.size();
    if (rows == 0 || im.size() != rows) throw std::invalid_argument("malformed matrix");
    const auto cols = re.at(0).size();
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (re.at(r).size() != cols || im.at(r).size() != cols) {
            throw std::invalid_argument("ragged matrix rows");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                Complex(re.at(r).at(c).get<double>(), im.at(r).at(c).get<double>());
        }
    }
    return m;
}

Json basis_vector_to_json(const ComplexVector& v) {
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re.push_back(v(i).real());
        im.push_back(v(i).imag());
    }
    return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexVector basis_vector_from_json(const Json& j) {
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != im.size()) throw std::invalid_argument("malformed vector");
    ComplexVector v(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = Complex(re.at(i).get<double>(), im.at(i).get<double>());
    }
    return v;
}

Json measurements_to_json(const MeasurementSet& set) {
    Json inputs = Json::array();
    for (int i = 0; i < set.inputs(); ++i) {
        Json vectors = Json::array();
        for (int o = 0; o < set.dim(); ++o) vectors.push_back(basis_vector_to_json(set.vector(i, o)));
        inputs.push_back(std::move(vectors));
    }
    return inputs;
}

MeasurementSet measurements_from_json(const Json& j) {
    std::vector<ComplexMatrix> bases;
    for (const auto& input : j) {
        if (input.empty()) throw std::invalid_argument("measurement input with no outputs");
        const auto d = input.size();
        ComplexMatrix u(d, d);
        for (std::size_t o = 0; o < d; ++o) {
            const ComplexVector v = basis_vector_from_json(input.at(o));
            if (v.size() != static_cast<Eigen::Index>(d)) {
                throw std::invalid_argument("basis vector has wrong dimension");
            }
            u.col(static_cast<Eigen::Index>(o)) = v;
        }
        bases.push_back(std::move(u));
    }
    return MeasurementSet(std::move(bases));
}

}  // namespace

Json to_json(const Scenario& sc) {
    return Json{{"m_a", sc.m_a}, {"m_b", sc.m_b}, {"o_a", sc.o_a}, {"o_b", sc.o_b}};
}

Scenario scenario_from_json(const Json& j) {
    return Scenario(j.at("m_a").get<int>(), j.at("m_b").get<int>(), j.at("o_a").get<int>(),
                    j.at("o_b").get<int>());
}

Json to_json(const BellFunctional& b) {
    Json coeffs = Json::array();
    for (const Int& c : b.coefficients) coeffs.push_back(int_to_json(c));
    return Json{{"scenario", to_json(b.scenario)}, {"coefficients", std::move(coeffs)}};
}

BellFunctional functional_from_json(const Json& j) {
    const Scenario sc = scenario_from_json(j.at("scenario"));
    std::vector<Int> coeffs;
    coeffs.reserve(j.at("coefficients").size());
    for (const auto& c : j.at("coefficients")) coeffs.push_back(int_from_json(c));
    return BellFunctional(sc, std::move(coeffs));
}

Json to_json(const Behavior& p) {
    return Json{{"scenario", to_json(p.scenario)}, {"probabilities", p.probabilities}};
}

Behavior behavior_from_json(const Json& j) {
    return Behavior(scenario_from_json(j.at("scenario")),
                    j.at("probabilities").get<std::vector<double>>());
}

Json to_json(const BoundResult& r) {
    Json out;
    out["value"] = int_to_json(r.value);
    out["partition"] = nullptr;
    out["alice_outputs"] = nullptr;
    out["comm"] = nullptr;
    out["bob_outputs"] = nullptr;
    if (r.witness_partition) out["partition"] = r.witness_partition->members;
    if (r.witness_onebit) {
        out["alice_outputs"] = r.witness_onebit->alice_outputs;
        out["comm"] = r.witness_onebit->comm;
        Json bob = Json::array();
        for (const auto& g : r.witness_onebit->bob_outputs) bob.push_back(Json{g[0], g[1]});
        out["bob_outputs"] = std::move(bob);
    } else if (r.witness_local) {
        out["alice_outputs"] = r.witness_local->alice_outputs;
        out["bob_outputs"] = r.witness_local->bob_outputs;
    }
    return out;
}

Json to_json(const QuantumModel& m) {
    return Json{
        {"local_dim", m.state.local_dim},
        {"state", matrix_to_json(m.state.density)},
        {"alice", measurements_to_json(m.alice)},
        {"bob", measurements_to_json(m.bob)},
    };
}

QuantumModel model_from_json(const Json& j) {
    const int d = j.at("local_dim").get<int>();
    QuantumState state(d, matrix_from_json(j.at("state")));
    return QuantumModel{std::move(state), measurements_from_json(j.at("alice")),
                        measurements_from_json(j.at("bob"))};
}

Json to_json(const StructureReport& r) {
    return Json{
        {"score", r.score},
        {"mub_deviation", r.mub_deviation},
        {"neighbor_overlap_spread", r.neighbor_overlap_spread},
        {"w", r.fit.w},
        {"residual_l2", r.fit.residual_l2},
        {"ns_violation", r.ns_violation},
        {"normalization_violation", r.normalization_violation},
    };
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

Json read_json_file(const std::string& path) {
    return Json::parse(read_text_file(path));
}

void write_json_file(const std::string& path, const Json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

}  // namespace bellcomm
