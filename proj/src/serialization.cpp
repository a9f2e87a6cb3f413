#include "siginform/serialization.hpp"

#include <fstream>
#include <sstream>

namespace siginform {

namespace {

TimeDomain domain_from_string(const std::string& s) {
    if (s == "dt") return TimeDomain::Discrete;
    if (s == "ct") return TimeDomain::Continuous;
    throw std::invalid_argument("unknown time domain '" + s + "' (expected \"dt\" or \"ct\")");
}

std::string domain_to_string(TimeDomain d) {
    return d == TimeDomain::Discrete ? "dt" : "ct";
}

std::string strip(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& field, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(field, &pos);
        if (pos != field.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed CSV: bad numeric field '" + field + "' on line " +
                                    std::to_string(line_no));
    }
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(strip(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json vector_to_json(const Vector& v) {
    Json arr = Json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

Matrix matrix_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array()) throw std::invalid_argument(what + ": expected an array of rows");
    const Index rows = static_cast<Index>(j.size());
    Index cols = -1;
    Matrix m;
    for (Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array()) throw std::invalid_argument(what + ": row is not an array");
        if (cols < 0) {
            cols = static_cast<Index>(row.size());
            m.resize(rows, cols);
        }
        if (static_cast<Index>(row.size()) != cols)
            throw std::invalid_argument(what + ": ragged rows");
        for (Index k = 0; k < cols; ++k) {
            const auto& cell = row[static_cast<std::size_t>(k)];
            if (!cell.is_number()) throw std::invalid_argument(what + ": non-numeric entry");
            m(i, k) = cell.get<double>();
        }
    }
    if (rows == 0) m.resize(0, 0);
    return m;
}

Vector vector_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array()) throw std::invalid_argument(what + ": expected an array");
    Vector v(static_cast<Index>(j.size()));
    for (Index i = 0; i < v.size(); ++i) {
        const auto& cell = j[static_cast<std::size_t>(i)];
        if (!cell.is_number()) throw std::invalid_argument(what + ": non-numeric entry");
        v(i) = cell.get<double>();
    }
    return v;
}

Json system_to_json(const LtiSystem& sys) {
    Json j;
    j["n"] = sys.order();
    j["A"] = matrix_to_json(sys.a);
    j["B"] = vector_to_json(sys.b.col(0));
    j["C"] = vector_to_json(sys.c.row(0).transpose());
    j["D"] = sys.d;
    j["domain"] = domain_to_string(sys.time_domain);
    return j;
}

LtiSystem system_from_json(const nlohmann::json& j) {
    for (const char* key : {"A", "B", "C", "D", "domain"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("system JSON: missing key \"") + key + "\"");
    LtiSystem sys;
    sys.a = matrix_from_json(j.at("A"), "system A");
    const Vector b = vector_from_json(j.at("B"), "system B");
    const Vector c = vector_from_json(j.at("C"), "system C");
    sys.b = b;
    sys.c = c.transpose();
    if (!j.at("D").is_number()) throw std::invalid_argument("system JSON: D must be a number");
    sys.d = j.at("D").get<double>();
    sys.time_domain = domain_from_string(j.at("domain").get<std::string>());
    sys.validate();
    if (j.contains("n") && j.at("n").get<Index>() != sys.order())
        throw std::invalid_argument("system JSON: declared n disagrees with A");
    return sys;
}

Json generator_to_json(const SignalGenerator& gen) {
    Json j;
    j["Sg"] = matrix_to_json(gen.s_g);
    j["Lg"] = vector_to_json(gen.l_g.row(0).transpose());
    j["w0"] = vector_to_json(gen.w0);
    j["domain"] = domain_to_string(gen.time_domain);
    return j;
}

SignalGenerator generator_from_json(const nlohmann::json& j) {
    for (const char* key : {"Sg", "Lg", "w0", "domain"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("generator JSON: missing key \"") + key + "\"");
    SignalGenerator gen;
    gen.s_g = matrix_from_json(j.at("Sg"), "generator Sg");
    gen.l_g = vector_from_json(j.at("Lg"), "generator Lg").transpose();
    gen.w0 = vector_from_json(j.at("w0"), "generator w0");
    gen.time_domain = domain_from_string(j.at("domain").get<std::string>());
    gen.validate();
    return gen;
}

std::string case_label_name(CaseLabel label) {
    switch (label) {
        case CaseLabel::A: return "A";
        case CaseLabel::B: return "B";
        case CaseLabel::C: return "C";
    }
    return "?";
}

std::string prediction_name(InformativityPrediction p) {
    switch (p) {
        case InformativityPrediction::NeverForAnyX0: return "never_for_any_x0";
        case InformativityPrediction::AlmostAllX0NotInE2: return "almost_all_x0_not_in_e2";
        case InformativityPrediction::AllX0: return "all_x0";
    }
    return "?";
}

Json verdict_to_json(const InformativityVerdict& v) {
    Json j;
    j["informative"] = v.informative;
    j["rank_achieved"] = v.rank_achieved;
    j["rank_required"] = v.rank_required;
    if (v.case_label) j["case"] = case_label_name(*v.case_label);
    j["margin"] = v.margin;
    j["tolerance_used"] = v.tolerance_used;
    return j;
}

Json analysis_to_json(const InterconnectionAnalysis& analysis) {
    Json j;
    j["Pi"] = matrix_to_json(analysis.pi);
    j["Mg"] = vector_to_json(analysis.m_g.row(0).transpose());
    j["x_bar0"] = vector_to_json(analysis.x_bar0);
    j["Gamma"] = matrix_to_json(analysis.gamma);
    j["sylvester_residual"] = analysis.sylvester_residual;
    j["spectral_gap"] = analysis.gap.min_gap;
    j["spectral_gap_tolerance"] = analysis.gap.tolerance;
    return j;
}

Json theorem_verdict_to_json(const TheoremOneVerdict& v) {
    Json j;
    j["case"] = case_label_name(v.case_label);
    j["prediction"] = prediction_name(v.prediction);
    if (v.e2_member) {
        j["e2_member"] = v.e2_member->member;
        j["e2_margin"] = v.e2_member->margin;
        j["e2_tolerance"] = v.e2_member->tolerance_used;
    }
    j["t_sufficient"] = v.t_sufficient;
    return j;
}

std::vector<double> read_signal_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw std::invalid_argument("malformed CSV: empty input");
    ++line_no;
    if (strip(line) != "u")
        throw std::invalid_argument("malformed CSV: expected header \"u\" on line 1");
    std::vector<double> u;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = strip(line);
        if (s.empty()) continue;
        u.push_back(parse_double(s, line_no));
    }
    if (u.empty()) throw std::invalid_argument("malformed CSV: no samples after header");
    return u;
}

void write_signal_csv(std::ostream& out, const std::vector<double>& u) {
    out << "u\n";
    out.precision(17);
    for (double v : u) out << v << "\n";
}

Trajectory read_trajectory_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw std::invalid_argument("malformed CSV: empty input");
    ++line_no;
    if (strip(line) != "u,y")
        throw std::invalid_argument("malformed CSV: expected header \"u,y\" on line 1");
    Trajectory traj;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = strip(line);
        if (s.empty()) continue;
        const auto fields = split_fields(s);
        if (fields.size() != 2)
            throw std::invalid_argument("malformed CSV: expected 2 fields on line " +
                                        std::to_string(line_no));
        traj.u.push_back(parse_double(fields[0], line_no));
        traj.y.push_back(parse_double(fields[1], line_no));
    }
    if (traj.u.empty()) throw std::invalid_argument("malformed CSV: no samples after header");
    return traj;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "u,y\n";
    out.precision(17);
    for (std::size_t i = 0; i < traj.u.size(); ++i) out << traj.u[i] << "," << traj.y[i] << "\n";
}

std::vector<JetSample> read_jets_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw std::invalid_argument("malformed CSV: empty input");
    ++line_no;
    const auto header = split_fields(strip(line));
    if (header.size() < 3 || header[0] != "t" || (header.size() - 1) % 2 != 0)
        throw std::invalid_argument("malformed CSV: expected header t,u0..,y0.. on line 1");
    const std::size_t l = (header.size() - 1) / 2;
    for (std::size_t i = 0; i < l; ++i) {
        if (header[1 + i] != "u" + std::to_string(i) ||
            header[1 + l + i] != "y" + std::to_string(i))
            throw std::invalid_argument("malformed CSV: expected header t,u0..,y0.. on line 1");
    }

    std::vector<JetSample> samples;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = strip(line);
        if (s.empty()) continue;
        const auto fields = split_fields(s);
        if (fields.size() != header.size())
            throw std::invalid_argument("malformed CSV: wrong field count on line " +
                                        std::to_string(line_no));
        JetSample sample;
        sample.time = parse_double(fields[0], line_no);
        sample.u_jet.resize(static_cast<Index>(l));
        sample.y_jet.resize(static_cast<Index>(l));
        for (std::size_t i = 0; i < l; ++i) {
            sample.u_jet(static_cast<Index>(i)) = parse_double(fields[1 + i], line_no);
            sample.y_jet(static_cast<Index>(i)) = parse_double(fields[1 + l + i], line_no);
        }
        samples.push_back(std::move(sample));
    }
    if (samples.empty()) throw std::invalid_argument("malformed CSV: no samples after header");
    return samples;
}

void write_jets_csv(std::ostream& out, const std::vector<JetSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("write_jets_csv: no samples");
    const Index l = samples.front().u_jet.size();
    out << "t";
    for (Index i = 0; i < l; ++i) out << ",u" << i;
    for (Index i = 0; i < l; ++i) out << ",y" << i;
    out << "\n";
    out.precision(17);
    for (const JetSample& s : samples) {
        out << s.time;
        for (Index i = 0; i < l; ++i) out << "," << s.u_jet(i);
        for (Index i = 0; i < l; ++i) out << "," << s.y_jet(i);
        out << "\n";
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
}

std::vector<double> load_signal_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    try {
        return read_signal_csv(in);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

Trajectory load_trajectory_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    try {
        return read_trajectory_csv(in);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

}  // namespace siginform
