#include "ga/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace ga {

namespace {

constexpr double rad_to_deg = 180.0 / std::numbers::pi;

lin::Vec parse_vector(const nlohmann::json& j) {
    if (!j.is_array()) throw parse_error("frame rows must be arrays of numbers");
    lin::Vec v;
    for (const auto& x : j) {
        if (!x.is_number()) throw parse_error("frame entries must be numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

std::vector<lin::Vec> parse_frame(const nlohmann::json& j, int dim,
                                  const char* name) {
    if (!j.is_array() || j.empty()) {
        throw parse_error(std::string(name) + " must be a non-empty array");
    }
    std::vector<lin::Vec> rows;
    for (const auto& row : j) {
        lin::Vec v = parse_vector(row);
        if (static_cast<int>(v.size()) != dim) {
            throw parse_error(std::string(name) +
                              " rows must have length dim");
        }
        rows.push_back(std::move(v));
    }
    return rows;
}

} // namespace

InputDocument parse_input_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw parse_error("input document is not valid JSON");
    }
    InputDocument doc;
    if (!j.contains("dim") || !j["dim"].is_number_integer()) {
        throw parse_error("missing integer field 'dim'");
    }
    doc.dim = j["dim"].get<int>();
    if (doc.dim < 1 || doc.dim > Algebra::max_dim) {
        throw parse_error("'dim' must be in [1, 14]");
    }
    if (!j.contains("a_frame") || !j.contains("b_frame")) {
        throw parse_error("missing 'a_frame' or 'b_frame'");
    }
    doc.a_frame = parse_frame(j["a_frame"], doc.dim, "a_frame");
    doc.b_frame = parse_frame(j["b_frame"], doc.dim, "b_frame");
    if (j.contains("a_scale")) doc.a_scale = j["a_scale"].get<double>();
    if (j.contains("b_scale")) doc.b_scale = j["b_scale"].get<double>();
    double eps_structural = 1e-10, eps_identity = 1e-9;
    if (j.contains("options")) {
        const auto& o = j["options"];
        if (o.contains("eps_structural")) {
            eps_structural = o["eps_structural"].get<double>();
        }
        if (o.contains("eps_identity")) {
            eps_identity = o["eps_identity"].get<double>();
        }
        if (o.contains("seed")) doc.seed = o["seed"].get<std::uint64_t>();
    }
    try {
        doc.tol = Tolerance(eps_structural, eps_identity);
    } catch (const error&) {
        throw parse_error("tolerances must lie in (0, 1e-3)");
    }
    return doc;
}

namespace {

std::vector<lin::Vec> parse_csv_rows(const std::string& text) {
    std::vector<lin::Vec> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        lin::Vec row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                row.push_back(v);
            } catch (const std::exception&) {
                throw parse_error("CSV cell is not a number: " + cell);
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parse_error("CSV file holds no vectors");
    return rows;
}

} // namespace

InputDocument parse_input_csv(const std::string& a_csv_text,
                              const std::string& b_csv_text) {
    InputDocument doc;
    doc.a_frame = parse_csv_rows(a_csv_text);
    doc.b_frame = parse_csv_rows(b_csv_text);
    doc.dim = static_cast<int>(doc.a_frame.front().size());
    if (doc.dim < 1 || doc.dim > Algebra::max_dim) {
        throw parse_error("inferred dimension must be in [1, 14]");
    }
    for (const auto& rows : {&doc.a_frame, &doc.b_frame}) {
        for (const auto& row : *rows) {
            if (static_cast<int>(row.size()) != doc.dim) {
                throw parse_error("CSV rows have inconsistent lengths");
            }
        }
    }
    return doc;
}

PreparedInput prepare_input(const InputDocument& doc) {
    Algebra alg(doc.dim);
    Subspace v = Subspace::from_vectors(doc.dim, doc.a_frame, doc.tol);
    Subspace w = Subspace::from_vectors(doc.dim, doc.b_frame, doc.tol);
    Blade a = blade_from_frame(v, doc.a_scale, alg);
    Blade b = blade_from_frame(w, doc.b_scale, alg);
    return PreparedInput{alg, std::move(v), std::move(w), std::move(a),
                         std::move(b)};
}

void JsonWriter::separator() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!first_in_scope_.empty()) {
        if (!first_in_scope_.back()) out_ += ",";
        first_in_scope_.back() = false;
    }
}

namespace {

void append_json_string(std::string& out, const std::string& v) {
    out += '"';
    for (char c : v) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    out += '"';
}

} // namespace

void JsonWriter::begin_object() {
    separator();
    out_ += "{";
    first_in_scope_.push_back(true);
}

void JsonWriter::end_object() {
    out_ += "}";
    first_in_scope_.pop_back();
}

void JsonWriter::begin_array() {
    separator();
    out_ += "[";
    first_in_scope_.push_back(true);
}

void JsonWriter::end_array() {
    out_ += "]";
    first_in_scope_.pop_back();
}

void JsonWriter::key(const std::string& k) {
    separator();
    append_json_string(out_, k);
    out_ += ":";
    pending_key_ = true;
}

void JsonWriter::value(double v) {
    separator();
    out_ += format_float(v);
}

void JsonWriter::value(int v) {
    separator();
    out_ += std::to_string(v);
}

void JsonWriter::value(std::uint64_t v) {
    separator();
    out_ += std::to_string(v);
}

void JsonWriter::value(bool v) {
    separator();
    out_ += v ? "true" : "false";
}

void JsonWriter::value(const std::string& v) {
    separator();
    append_json_string(out_, v);
}

std::string format_float(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_float_human(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::vector<LabeledCoefficient> labeled_coefficients(const Multivector& m,
                                                     double eps) {
    std::vector<LabeledCoefficient> out;
    for (std::uint32_t mask = 0; mask < m.coeff_count(); ++mask) {
        const double c = m[mask];
        if (std::abs(c) <= eps) continue;
        std::string label;
        if (mask == 0) {
            label = "1";
        } else {
            for (int i = 0; i < m.dim(); ++i) {
                if (!(mask & (std::uint32_t{1} << i))) continue;
                if (!label.empty()) label += "^";
                label += "e" + std::to_string(i + 1);
            }
        }
        out.push_back({std::move(label), c});
    }
    return out;
}

namespace {

void write_vec(JsonWriter& w, const lin::Vec& v) {
    w.begin_array();
    for (double x : v) w.value(x);
    w.end_array();
}

void write_frame(JsonWriter& w, const std::vector<lin::Vec>& rows) {
    w.begin_array();
    for (const auto& row : rows) write_vec(w, row);
    w.end_array();
}

void write_input(JsonWriter& w, const InputDocument& doc) {
    w.begin_object();
    w.key("dim");
    w.value(doc.dim);
    w.key("a_frame");
    write_frame(w, doc.a_frame);
    w.key("b_frame");
    write_frame(w, doc.b_frame);
    w.key("a_scale");
    w.value(doc.a_scale);
    w.key("b_scale");
    w.value(doc.b_scale);
    w.key("options");
    w.begin_object();
    w.key("eps_structural");
    w.value(doc.tol.structural());
    w.key("eps_identity");
    w.value(doc.tol.identity());
    w.key("seed");
    w.value(doc.seed);
    w.end_object();
    w.end_object();
}

void write_coefficients(JsonWriter& w, const Multivector& m) {
    w.begin_array();
    for (const auto& lc : labeled_coefficients(m, 0.0)) {
        w.begin_object();
        w.key("blade");
        w.value(lc.label);
        w.key("value");
        w.value(lc.value);
        w.end_object();
    }
    w.end_array();
}

void write_angle_pair(JsonWriter& w, const std::string& name, double rad) {
    w.key(name + "_rad");
    w.value(rad);
    w.key(name + "_deg");
    w.value(rad * rad_to_deg);
}

} // namespace

std::string render_report_json(const Report& report) {
    JsonWriter w;
    w.begin_object();
    w.key("input");
    write_input(w, report.input);

    if (report.angles) {
        const AngleReport& a = *report.angles;
        w.key("angles");
        w.begin_object();
        write_angle_pair(w, "asymmetric_vw", a.asym_vw);
        write_angle_pair(w, "asymmetric_wv", a.asym_wv);
        write_angle_pair(w, "complementary", a.comp);
        write_angle_pair(w, "max_symmetrized", a.max_sym);
        write_angle_pair(w, "min_symmetrized", a.min_sym);
        w.key("projection_factor_vw");
        w.value(a.proj_factor_vw);
        if (a.oriented_asym) {
            write_angle_pair(w, "oriented_asymmetric", *a.oriented_asym);
            write_angle_pair(w, "oriented_complementary", *a.oriented_comp);
            write_angle_pair(w, "oriented_max_symmetrized",
                             *a.oriented_max_sym);
            w.key("oriented_projection_factor");
            w.value(*a.oriented_proj_factor);
        }
        w.key("orientation_determinate");
        w.value(a.orientation_determinate);
        w.end_object();
    }

    if (report.principal) {
        const PrincipalData& pd = *report.principal;
        w.key("principal");
        w.begin_object();
        w.key("thetas_rad");
        w.begin_array();
        for (double th : pd.thetas) w.value(th);
        w.end_array();
        w.key("zero_count");
        w.value(pd.zero_count);
        w.key("last_acute");
        w.value(pd.last_acute);
        w.key("sign_a");
        w.value(pd.sign_a);
        w.key("sign_b");
        w.value(pd.sign_b);
        w.end_object();
    }

    if (report.bivector) {
        w.key("bivector");
        w.begin_object();
        w.key("terms");
        w.begin_array();
        for (const auto& t : report.bivector->terms()) {
            w.begin_object();
            w.key("theta_rad");
            w.value(t.theta);
            w.key("plane");
            write_coefficients(w, t.plane);
            w.end_object();
        }
        w.end_array();
        w.key("basis_dependent");
        w.value(report.bivector->basis_dependent());
        w.end_object();
    }

    if (report.exp_phi) {
        w.key("exp_phi");
        w.begin_object();
        w.key("coefficients");
        write_coefficients(w, *report.exp_phi);
        if (!report.plucker.empty()) {
            w.key("terms");
            w.begin_array();
            for (const auto& e : report.plucker) {
                if (e.coefficient == 0.0) continue;
                w.begin_object();
                w.key("indices");
                w.begin_array();
                for (int i : e.indices) w.value(i);
                w.end_array();
                w.key("coordinate_blade");
                w.value(e.label);
                w.key("coefficient");
                w.value(e.coefficient);
                w.end_object();
            }
            w.end_array();
        }
        w.end_object();
    }

    if (!report.plucker.empty()) {
        w.key("plucker");
        w.begin_array();
        for (const auto& e : report.plucker) {
            w.begin_object();
            w.key("coordinate_blade");
            w.value(e.label);
            w.key("coefficient");
            w.value(e.coefficient);
            w.end_object();
        }
        w.end_array();
    }

    if (!report.products.empty()) {
        w.key("products");
        w.begin_object();
        for (const auto& [name, mv] : report.products) {
            w.key(name);
            write_coefficients(w, mv);
        }
        w.end_object();
    }

    if (report.recovery) {
        const HitzerRecovery& r = *report.recovery;
        w.key("recovery");
        w.begin_object();
        w.key("zero_count");
        w.value(r.zero_count);
        w.key("last_acute");
        w.value(r.last_acute);
        w.key("thetas_rad");
        w.begin_array();
        for (double th : r.thetas) w.value(th);
        w.end_array();
        w.key("planes");
        w.begin_array();
        for (const auto& plane : r.planes) write_coefficients(w, plane);
        w.end_array();
        w.key("perp_factor");
        write_coefficients(w, r.perp_factor);
        w.end_object();
    }

    if (!report.geodesic_frames.empty()) {
        w.key("geodesic");
        w.begin_array();
        for (const auto& [t, frame] : report.geodesic_frames) {
            w.begin_object();
            w.key("t");
            w.value(t);
            w.key("frame");
            write_frame(w, frame.frame());
            w.end_object();
        }
        w.end_array();
    }

    w.key("flags");
    w.begin_array();
    for (const auto& f : report.flags) w.value(f);
    w.end_array();

    w.end_object();
    std::string out = w.str();
    out += "\n";
    return out;
}

namespace {

std::string human_angle(double rad) {
    return format_float_human(rad) + " rad (" +
           format_float_human(rad * rad_to_deg) + " deg)";
}

std::string human_coeffs(const Multivector& m) {
    std::string out;
    for (const auto& lc : labeled_coefficients(m, 1e-14)) {
        if (!out.empty()) out += "  ";
        out += lc.label + ": " + format_float_human(lc.value);
    }
    if (out.empty()) out = "0";
    return out;
}

} // namespace

std::string render_report_text(const Report& report) {
    std::string out;
    auto line = [&out](const std::string& s) { out += s + "\n"; };

    if (report.angles) {
        const AngleReport& a = *report.angles;
        line("angles:");
        line("  asymmetric V,W:    " + human_angle(a.asym_vw));
        line("  asymmetric W,V:    " + human_angle(a.asym_wv));
        line("  complementary:     " + human_angle(a.comp));
        line("  max symmetrized:   " + human_angle(a.max_sym));
        line("  min symmetrized:   " + human_angle(a.min_sym));
        line("  projection factor: " + format_float_human(a.proj_factor_vw));
        if (a.oriented_asym) {
            line("  oriented asymmetric:    " + human_angle(*a.oriented_asym));
            line("  oriented complementary: " + human_angle(*a.oriented_comp));
            line("  oriented projection:    " +
                 format_float_human(*a.oriented_proj_factor));
        }
        if (!a.orientation_determinate) {
            line("  (orientation depends on the choice of principal bases)");
        }
    }
    if (report.principal) {
        const PrincipalData& pd = *report.principal;
        std::string ths;
        for (double th : pd.thetas) {
            if (!ths.empty()) ths += ", ";
            ths += format_float_human(th);
        }
        line("principal angles (rad): [" + ths + "]  zero_count=" +
             std::to_string(pd.zero_count) + " last_acute=" +
             std::to_string(pd.last_acute));
    }
    if (report.bivector) {
        line("angle bivector:");
        for (const auto& t : report.bivector->terms()) {
            line("  theta " + human_angle(t.theta) + "  plane " +
                 human_coeffs(t.plane));
        }
        if (report.bivector->terms().empty()) line("  0");
    }
    if (report.exp_phi) {
        line("exp(phi): " + human_coeffs(*report.exp_phi));
    }
    if (!report.plucker.empty()) {
        line("plucker coordinates:");
        for (const auto& e : report.plucker) {
            line("  " + e.label + ": " + format_float_human(e.coefficient));
        }
    }
    for (const auto& [name, mv] : report.products) {
        line(name + ": " + human_coeffs(mv));
    }
    if (report.recovery) {
        const HitzerRecovery& r = *report.recovery;
        std::string ths;
        for (double th : r.thetas) {
            if (!ths.empty()) ths += ", ";
            ths += format_float_human(th);
        }
        line("recovered angles (rad): [" + ths + "]  zero_count=" +
             std::to_string(r.zero_count) + " last_acute=" +
             std::to_string(r.last_acute));
    }
    for (const auto& [t, frame] : report.geodesic_frames) {
        std::string rows;
        for (const auto& row : frame.frame()) {
            rows += "  [";
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) rows += ", ";
                rows += format_float_human(row[i]);
            }
            rows += "]";
        }
        line("t=" + format_float_human(t) + rows);
    }
    for (const auto& f : report.flags) line("note: " + f);
    return out;
}

} // namespace ga
