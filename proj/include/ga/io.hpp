#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ga/angle_bivector.hpp"
#include "ga/angles.hpp"
#include "ga/identities.hpp"

namespace ga {

struct parse_error : error {
    using error::error;
};

/// A pair of subspaces (optionally scaled into blades) as read from a
/// structured input document or a pair of CSV files.
struct InputDocument {
    int dim = 0;
    std::vector<lin::Vec> a_frame;
    std::vector<lin::Vec> b_frame;
    double a_scale = 1.0;
    double b_scale = 1.0;
    Tolerance tol;
    std::uint64_t seed = 0;
};

/// Parses the canonical JSON schema (see README): dim, a_frame, b_frame,
/// optional a_scale/b_scale, optional options.{eps_structural,
/// eps_identity, seed}.
InputDocument parse_input_json(const std::string& text);

/// CSV mode: one vector per row, comma separated; the dimension is
/// inferred from the row length.
InputDocument parse_input_csv(const std::string& a_csv_text,
                              const std::string& b_csv_text);

/// Orthonormalized inputs. Raises rank_error when a frame is rank
/// deficient.
struct PreparedInput {
    Algebra alg;
    Subspace v;
    Subspace w;
    Blade a;
    Blade b;
};

PreparedInput prepare_input(const InputDocument& doc);

/// Minimal JSON writer with deterministic formatting: objects keep
/// insertion order and numbers are printed with 17 significant digits, so
/// equal inputs produce byte-identical reports.
class JsonWriter {
public:
    void begin_object();
    void end_object();
    void begin_array();
    void end_array();
    void key(const std::string& k);
    void value(double v);
    void value(int v);
    void value(std::uint64_t v);
    void value(bool v);
    void value(const std::string& v);

    const std::string& str() const { return out_; }

private:
    void separator();
    std::string out_;
    std::vector<bool> first_in_scope_;
    bool pending_key_ = false;
};

std::string format_float(double v);        // 17 significant digits
std::string format_float_human(double v);  // 6 significant digits

/// Nonzero coefficients of a multivector with canonical basis-blade
/// labels such as "e1^e3".
struct LabeledCoefficient {
    std::string label;
    double value;
};
std::vector<LabeledCoefficient> labeled_coefficients(const Multivector& m,
                                                     double eps = 0.0);

/// Report sections; each command fills the ones it owns.
struct Report {
    InputDocument input;
    std::optional<AngleReport> angles;
    std::optional<PrincipalData> principal;
    std::optional<AngleBivector> bivector;
    std::optional<Multivector> exp_phi;
    std::vector<PluckerEntry> plucker;
    std::vector<std::pair<std::string, Multivector>> products;
    std::optional<HitzerRecovery> recovery;
    std::vector<std::pair<double, Subspace>> geodesic_frames;
    std::vector<std::string> flags;
};

std::string render_report_json(const Report& report);
std::string render_report_text(const Report& report);

} // namespace ga
