#pragma once

// Command-line front end: JSON operator specifications in, deterministic
// JSON (or human-oriented table) reports out.
//
// Exit codes: 0 success, 2 malformed input (bad JSON, bad flags),
// 3 schema/validation/dimension errors, 4 internal cross-check disagreement,
// 1 anything unexpected.

#include "classify.hpp"
#include "fitzpatrick.hpp"
#include "gallery.hpp"
#include "nonexpansive.hpp"
#include "relation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monorel::cli {

class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}
  [[nodiscard]] int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

// ===== operator specification ==============================================

struct OperatorSpec {
  enum class Kind { matrix, relation, gallery };
  Kind kind = Kind::matrix;
  std::optional<Matrix> entries;      // kind == matrix: the square matrix
  std::optional<Matrix> graph_basis;  // kind == relation: columns spanning the graph
  std::optional<std::string> gallery_name;
  std::optional<int> param;
  double tolerance = default_tol;
};

inline bool exact_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a.rows() == 0 || (a.array() == b.array()).all());
}

inline bool operator==(const OperatorSpec& a, const OperatorSpec& b) {
  if (a.kind != b.kind || a.gallery_name != b.gallery_name || a.param != b.param ||
      a.tolerance != b.tolerance)
    return false;
  if (a.entries.has_value() != b.entries.has_value()) return false;
  if (a.entries && !exact_equal(*a.entries, *b.entries)) return false;
  if (a.graph_basis.has_value() != b.graph_basis.has_value()) return false;
  if (a.graph_basis && !exact_equal(*a.graph_basis, *b.graph_basis)) return false;
  return true;
}

namespace detail {

inline double require_number(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number()) throw CliError(3, "field '" + field + "' must contain numbers");
  return j.get<double>();
}

inline Matrix parse_entries(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw CliError(3, "field 'entries' must be a non-empty array of rows");
  const auto rows = static_cast<int>(j.size());
  int cols = -1;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty())
      throw CliError(3, "field 'entries' must contain non-empty rows");
    if (cols < 0)
      cols = static_cast<int>(row.size());
    else if (static_cast<int>(row.size()) != cols)
      throw CliError(3, "field 'entries' must be rectangular: rows differ in length");
  }
  if (rows != cols) throw CliError(3, "field 'entries' must form a square matrix");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) m(i, k) = require_number(j[i][k], "entries");
  return m;
}

inline Matrix parse_graph_basis(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw CliError(3, "field 'graph_basis' must be a non-empty array of vectors");
  int len = -1;
  for (const auto& vec : j) {
    if (!vec.is_array()) throw CliError(3, "field 'graph_basis' must contain vectors");
    if (len < 0)
      len = static_cast<int>(vec.size());
    else if (static_cast<int>(vec.size()) != len)
      throw CliError(3, "field 'graph_basis' vectors must share one length");
  }
  if (len <= 0 || len % 2 != 0)
    throw CliError(3, "field 'graph_basis' vectors must have even positive length");
  Matrix basis(len, static_cast<int>(j.size()));
  for (int c = 0; c < basis.cols(); ++c)
    for (int r = 0; r < len; ++r) basis(r, c) = require_number(j[c][r], "graph_basis");
  return basis;
}

}  // namespace detail

/// Parses and validates a JSON operator specification. Malformed JSON maps
/// to exit code 2, schema violations to exit code 3 with the offending
/// field named.
inline OperatorSpec parse_spec(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CliError(2, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw CliError(3, "specification must be a JSON object");

  static const std::vector<std::string> known = {"kind",         "entries", "graph_basis",
                                                 "gallery_name", "param",   "tolerance"};
  for (const auto& item : j.items())
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      throw CliError(3, "unknown field: " + item.key());

  if (!j.contains("kind") || !j["kind"].is_string())
    throw CliError(3, "field 'kind' is required and must be a string");
  const std::string kind = j["kind"].get<std::string>();

  OperatorSpec spec;
  if (j.contains("tolerance")) {
    if (!j["tolerance"].is_number() || j["tolerance"].get<double>() <= 0.0)
      throw CliError(3, "field 'tolerance' must be a positive number");
    spec.tolerance = j["tolerance"].get<double>();
  }

  const auto forbid = [&](const std::string& field) {
    if (j.contains(field)) throw CliError(3, "field '" + field + "' not allowed for kind " + kind);
  };

  if (kind == "matrix") {
    spec.kind = OperatorSpec::Kind::matrix;
    forbid("graph_basis");
    forbid("gallery_name");
    forbid("param");
    if (!j.contains("entries")) throw CliError(3, "field 'entries' is required for kind matrix");
    spec.entries = detail::parse_entries(j["entries"]);
    return spec;
  }
  if (kind == "relation") {
    spec.kind = OperatorSpec::Kind::relation;
    forbid("entries");
    forbid("gallery_name");
    forbid("param");
    if (!j.contains("graph_basis"))
      throw CliError(3, "field 'graph_basis' is required for kind relation");
    spec.graph_basis = detail::parse_graph_basis(j["graph_basis"]);
    return spec;
  }
  if (kind == "gallery") {
    spec.kind = OperatorSpec::Kind::gallery;
    forbid("entries");
    forbid("graph_basis");
    if (!j.contains("gallery_name") || !j["gallery_name"].is_string())
      throw CliError(3, "field 'gallery_name' is required for kind gallery");
    spec.gallery_name = j["gallery_name"].get<std::string>();

    const auto catalog = gallery_list();
    const auto entry = std::find_if(catalog.begin(), catalog.end(),
                                    [&](const GalleryEntry& e) { return e.name == *spec.gallery_name; });
    if (entry == catalog.end())
      throw CliError(3, "field 'gallery_name' unknown: " + *spec.gallery_name);
    if (entry->takes_param) {
      if (!j.contains("param") || !j["param"].is_number_integer())
        throw CliError(3, "field 'param' is required for gallery " + entry->name +
                              " and must be an integer");
      const int param = j["param"].get<int>();
      if (param < entry->min_param)
        throw CliError(3, "field 'param' must be >= " + std::to_string(entry->min_param) +
                              " for gallery " + entry->name);
      spec.param = param;
    } else {
      forbid("param");
    }
    return spec;
  }
  throw CliError(3, "field 'kind' must be one of matrix, relation, gallery");
}

inline bool is_ball_spec(const OperatorSpec& spec) {
  return spec.kind == OperatorSpec::Kind::gallery && spec.gallery_name == "rotation_ball";
}

/// Ambient dimension of the specified operator.
inline int spec_dimension(const OperatorSpec& spec) {
  switch (spec.kind) {
    case OperatorSpec::Kind::matrix:
      return static_cast<int>(spec.entries->rows());
    case OperatorSpec::Kind::relation:
      return static_cast<int>(spec.graph_basis->rows()) / 2;
    case OperatorSpec::Kind::gallery: {
      const std::string& name = *spec.gallery_name;
      if (name == "rotation" || name == "rotation_ball") return 2;
      if (name == "volterra") return *spec.param;
      if (name == "shift_sum") return 2 * *spec.param;
      return *spec.param;  // cyclic_shift_displacement
    }
  }
  throw std::logic_error("spec_dimension: unreachable");
}

/// Linear-relation form of the specification. The ball-constrained gallery
/// operator has no such form; callers route it through its own procedures.
inline LinearRelation spec_relation(const OperatorSpec& spec) {
  switch (spec.kind) {
    case OperatorSpec::Kind::matrix:
      return LinearRelation::from_matrix(*spec.entries, spec.tolerance);
    case OperatorSpec::Kind::relation:
      return LinearRelation::from_graph_span(static_cast<int>(spec.graph_basis->rows()) / 2,
                                             *spec.graph_basis, spec.tolerance);
    case OperatorSpec::Kind::gallery:
      if (is_ball_spec(spec))
        throw CliError(3, "gallery rotation_ball is set-valued and has no linear-relation form");
      return LinearRelation::from_matrix(gallery_matrix(*spec.gallery_name, spec.param),
                                         spec.tolerance);
  }
  throw std::logic_error("spec_relation: unreachable");
}

// ===== deterministic JSON writing ==========================================

namespace jsonw {

inline std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

inline std::string str(const std::string& s) { return "\"" + escape(s) + "\""; }

/// 17-significant-digit decimal, always carrying a fractional or exponent
/// marker so the token round-trips as a float.
inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::string s(buf);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find('n') == std::string::npos && s.find('f') == std::string::npos)
    s += ".0";
  return s;
}

inline std::string boolean(bool b) { return b ? "true" : "false"; }

inline std::string opt_boolean(const std::optional<bool>& b) {
  return b ? boolean(*b) : "null";
}

inline std::string fitz(const FitzValue& v) {
  return v.is_finite() ? num(v.value()) : "\"inf\"";
}

inline std::string opt_fitz(const std::optional<FitzValue>& v) { return v ? fitz(*v) : "null"; }

inline std::string vec(const Vector& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += num(v[i]);
  }
  return out + "]";
}

inline std::string mat_rows(const Matrix& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ",";
    out += vec(m.row(i).transpose());
  }
  return out + "]";
}

inline std::string mat_cols(const Matrix& m) {
  std::string out = "[";
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (c) out += ",";
    out += vec(m.col(c));
  }
  return out + "]";
}

}  // namespace jsonw

/// Canonical serialization of a specification; re-parses to an equal spec.
inline std::string spec_json(const OperatorSpec& spec) {
  std::string out = "{\"kind\":";
  switch (spec.kind) {
    case OperatorSpec::Kind::matrix:
      out += "\"matrix\",\"entries\":" + jsonw::mat_rows(*spec.entries);
      break;
    case OperatorSpec::Kind::relation:
      out += "\"relation\",\"graph_basis\":" + jsonw::mat_cols(*spec.graph_basis);
      break;
    case OperatorSpec::Kind::gallery:
      out += "\"gallery\",\"gallery_name\":" + jsonw::str(*spec.gallery_name);
      if (spec.param) out += ",\"param\":" + std::to_string(*spec.param);
      break;
  }
  out += ",\"tolerance\":" + jsonw::num(spec.tolerance) + "}";
  return out;
}

inline std::string expectation_json(const GalleryExpectation& e) {
  std::string out = "{";
  out += "\"monotone\":" + jsonw::opt_boolean(e.monotone);
  out += ",\"maximal\":" + jsonw::opt_boolean(e.maximal);
  out += ",\"strictly_monotone\":" + jsonw::opt_boolean(e.strictly_monotone);
  out += ",\"paramonotone\":" + jsonw::opt_boolean(e.paramonotone);
  out += ",\"rectangular\":" + jsonw::opt_boolean(e.rectangular);
  out += ",\"cocoercivity_modulus\":" + jsonw::opt_fitz(e.cocoercivity_modulus);
  return out + "}";
}

inline std::string report_json(const ClassificationReport& r,
                               const GalleryExpectation* expected) {
  std::string out = "{";
  out += "\"n\":" + std::to_string(r.n);
  out += ",\"tol\":" + jsonw::num(r.tol);
  out += ",\"monotone\":" + jsonw::boolean(r.monotone);
  out += ",\"maximal\":" + jsonw::opt_boolean(r.maximal);
  out += ",\"strictly_monotone\":" + jsonw::opt_boolean(r.strictly_monotone);
  out += ",\"paramonotone\":" + jsonw::opt_boolean(r.paramonotone);
  out += ",\"rectangular\":" + jsonw::opt_boolean(r.rectangular);
  out += ",\"cocoercivity_modulus\":" + jsonw::opt_fitz(r.cocoercivity_modulus);
  out += ",\"witnesses\":{";
  bool first = true;
  for (const auto& [name, pair] : r.witnesses) {
    if (!first) out += ",";
    first = false;
    out += jsonw::str(name) + ":[" + jsonw::vec(pair.first) + "," + jsonw::vec(pair.second) + "]";
  }
  out += "}";
  if (expected) out += ",\"gallery_expected\":" + expectation_json(*expected);
  return out + "}";
}

// ===== table writing ========================================================

namespace tablew {

inline std::string row(const std::string& key, const std::string& value) {
  std::string out = key;
  out.append(key.size() < 24 ? 24 - key.size() : 1, ' ');
  return out + value + "\n";
}

inline std::string opt_boolean(const std::optional<bool>& b) {
  return b ? (*b ? "true" : "false") : "-";
}

inline std::string fitz(const FitzValue& v) {
  return v.is_finite() ? jsonw::num(v.value()) : "inf";
}

inline std::string pair_line(const std::pair<Vector, Vector>& p) {
  return "x=" + jsonw::vec(p.first) + " xstar=" + jsonw::vec(p.second);
}

}  // namespace tablew

inline std::string report_table(const ClassificationReport& r,
                                const GalleryExpectation* expected) {
  std::string out;
  out += tablew::row("n", std::to_string(r.n));
  out += tablew::row("tol", jsonw::num(r.tol));
  out += tablew::row("monotone", r.monotone ? "true" : "false");
  out += tablew::row("maximal", tablew::opt_boolean(r.maximal));
  out += tablew::row("strictly_monotone", tablew::opt_boolean(r.strictly_monotone));
  out += tablew::row("paramonotone", tablew::opt_boolean(r.paramonotone));
  out += tablew::row("rectangular", tablew::opt_boolean(r.rectangular));
  out += tablew::row("cocoercivity_modulus",
                     r.cocoercivity_modulus ? tablew::fitz(*r.cocoercivity_modulus) : "-");
  for (const auto& [name, pair] : r.witnesses)
    out += tablew::row("witness " + name, tablew::pair_line(pair));
  if (expected) {
    out += tablew::row("expected monotone", tablew::opt_boolean(expected->monotone));
    out += tablew::row("expected maximal", tablew::opt_boolean(expected->maximal));
    out += tablew::row("expected strict", tablew::opt_boolean(expected->strictly_monotone));
    out += tablew::row("expected paramonotone", tablew::opt_boolean(expected->paramonotone));
    out += tablew::row("expected rectangular", tablew::opt_boolean(expected->rectangular));
    out += tablew::row("expected modulus", expected->cocoercivity_modulus
                                               ? tablew::fitz(*expected->cocoercivity_modulus)
                                               : "-");
  }
  return out;
}

// ===== command implementations ==============================================

inline ClassificationReport classify_spec(const OperatorSpec& spec) {
  if (is_ball_spec(spec))
    return ball_classification(BallConstrainedOperator(rotation(), spec.tolerance));
  return classification_report(spec_relation(spec));
}

/// classify: full report. JSON key order is fixed; floats use 17 significant
/// digits, so identical inputs give byte-identical output.
inline std::string run_classify(const OperatorSpec& spec, const std::string& format) {
  const ClassificationReport report = classify_spec(spec);
  std::optional<GalleryExpectation> expected;
  if (spec.kind == OperatorSpec::Kind::gallery)
    expected = gallery_expected(*spec.gallery_name, spec.param);
  const GalleryExpectation* ep = expected ? &*expected : nullptr;
  return format == "table" ? report_table(report, ep) : report_json(report, ep) + "\n";
}

/// fitz: one Fitzpatrick-function value. "inf" encodes +infinity; a
/// near_singular marker appears when the finiteness test sat within a decade
/// of its threshold.
inline std::string run_fitz(const OperatorSpec& spec, const Vector& x, const Vector& xstar,
                            const std::string& format) {
  const int n = spec_dimension(spec);
  if (static_cast<int>(x.size()) != n)
    throw CliError(3, "--x must have length " + std::to_string(n));
  if (static_cast<int>(xstar.size()) != n)
    throw CliError(3, "--xstar must have length " + std::to_string(n));

  FitzValue value = FitzValue::plus_infinity();
  bool near_singular = false;
  if (is_ball_spec(spec)) {
    value = ball_fitzpatrick(BallConstrainedOperator(rotation(), spec.tolerance), x, xstar);
  } else {
    const SupResult result = fitzpatrick_eval(spec_relation(spec), x, xstar);
    value = result.value;
    near_singular = result.near_singular;
  }

  if (format == "table") {
    std::string out = tablew::row("value", tablew::fitz(value));
    if (near_singular) out += tablew::row("near_singular", "true");
    return out;
  }
  std::string out = "{\"value\":" + jsonw::fitz(value);
  if (near_singular) out += ",\"near_singular\":true";
  return out + "}\n";
}

/// modulus: cocoercivity modulus of a single-valued full-domain operator.
inline std::string run_modulus(const OperatorSpec& spec, const std::string& format) {
  if (is_ball_spec(spec))
    throw CliError(3, "gallery rotation_ball is set-valued; modulus undefined");
  const LinearRelation a = spec_relation(spec);
  const auto m = as_matrix(a);
  if (!m)
    throw CliError(3, "operator is not a single-valued full-domain matrix; modulus undefined");
  const FitzValue beta = cocoercivity_modulus(*m, spec.tolerance);
  if (format == "table") return tablew::row("modulus", tablew::fitz(beta));
  return "{\"modulus\":" + jsonw::fitz(beta) + "}\n";
}

/// gallery: with no name, the catalog; with a name (and a parameter range
/// for parameterized families), classification reports plus the echoed
/// concrete specification for each instance.
inline std::string run_gallery(const std::optional<std::string>& name, std::optional<int> from,
                               std::optional<int> to, double tol, const std::string& format) {
  const auto catalog = gallery_list();
  if (!name) {
    if (from || to) throw CliError(3, "--from/--to require --name");
    if (format == "table") {
      std::string out;
      for (const auto& e : catalog)
        out += tablew::row(e.name + (e.takes_param ? " <param>" : ""), e.summary);
      return out;
    }
    std::string out = "[";
    bool first = true;
    for (const auto& e : catalog) {
      if (!first) out += ",";
      first = false;
      out += "{\"name\":" + jsonw::str(e.name) +
             ",\"takes_param\":" + jsonw::boolean(e.takes_param) +
             ",\"min_param\":" + std::to_string(e.min_param) +
             ",\"summary\":" + jsonw::str(e.summary) + "}";
    }
    return out + "]\n";
  }

  const auto entry =
      std::find_if(catalog.begin(), catalog.end(), [&](const GalleryEntry& e) { return e.name == *name; });
  if (entry == catalog.end()) throw CliError(3, "--name unknown: " + *name);

  std::vector<std::optional<int>> params;
  if (entry->takes_param) {
    if (!from) throw CliError(3, "--from is required for gallery " + entry->name);
    const int hi = to.value_or(*from);
    if (*from < entry->min_param)
      throw CliError(3, "--from must be >= " + std::to_string(entry->min_param) + " for gallery " +
                            entry->name);
    if (hi < *from) throw CliError(3, "--to must be >= --from");
    for (int p = *from; p <= hi; ++p) params.emplace_back(p);
  } else {
    if (from || to) throw CliError(3, "--from/--to not allowed for gallery " + entry->name);
    params.emplace_back(std::nullopt);
  }

  std::string json = "[";
  std::string table;
  bool first = true;
  for (const auto& p : params) {
    OperatorSpec spec;
    spec.kind = OperatorSpec::Kind::gallery;
    spec.gallery_name = entry->name;
    spec.param = p;
    spec.tolerance = tol;

    // echo the concrete operator that was classified; matrix families echo
    // their realized matrix so the echo re-parses as a standalone spec
    OperatorSpec echo = spec;
    if (!is_ball_spec(spec)) {
      echo = OperatorSpec();
      echo.kind = OperatorSpec::Kind::matrix;
      echo.entries = gallery_matrix(entry->name, p);
      echo.tolerance = tol;
    }

    const ClassificationReport report = classify_spec(spec);
    const GalleryExpectation expected = gallery_expected(entry->name, p);
    if (!first) json += ",";
    first = false;
    json += "{";
    if (p) json += "\"param\":" + std::to_string(*p) + ",";
    json += "\"spec\":" + spec_json(echo) + ",\"report\":" + report_json(report, &expected) + "}";

    if (p) table += tablew::row("param", std::to_string(*p));
    table += report_table(report, &expected) + "\n";
  }
  return format == "table" ? table : json + "]\n";
}

// ===== driver ===============================================================

/// Maps the in-flight exception to the exit-code contract, filling the
/// diagnostic line. Factored out so the mapping is unit-testable without
/// manufacturing each failure end to end.
inline int translate_current_failure(std::string& err) {
  try {
    throw;
  } catch (const CliError& e) {
    err = std::string(e.what()) + "\n";
    return e.exit_code();
  } catch (const MethodDisagreement& e) {
    err = std::string(e.what()) + "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    err = std::string(e.what()) + "\n";
    return 3;
  } catch (const std::exception& e) {
    err = std::string("unexpected error: ") + e.what() + "\n";
    return 1;
  } catch (...) {
    err = "unexpected error\n";
    return 1;
  }
}

namespace detail {

inline std::string read_input(const std::string& path, const std::string& stdin_text) {
  if (path == "-") return stdin_text;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(3, "--input: cannot read file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Vector parse_csv_vector(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::string token;
  std::istringstream stream(text);
  while (std::getline(stream, token, ',')) {
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(token, &pos));
      while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
      if (pos != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw CliError(3, flag + " must be a comma-separated list of numbers");
    }
  }
  if (values.empty()) throw CliError(3, flag + " must be a comma-separated list of numbers");
  Vector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
  return v;
}

}  // namespace detail

/// Full command-line driver, argv (without the program name) to exit code.
/// Keeping it a pure function of its inputs makes process behavior and unit
/// tests share one code path.
inline int run_cli(std::vector<std::string> args, const std::string& stdin_text, std::string& out,
                   std::string& err) {
  CLI::App app{"monotone linear relation toolkit"};
  app.name("monorel");
  app.require_subcommand(1);

  std::string input_path = "-";
  double tol_flag = default_tol;
  std::string format = "json";
  std::string x_text, xstar_text;
  std::string gallery_name_value;
  int sweep_from_value = 0;
  int sweep_to_value = 0;

  std::vector<CLI::Option*> tol_options;
  const auto add_common = [&](CLI::App* cmd, bool with_input) {
    if (with_input)
      cmd->add_option("--input", input_path, "operator spec JSON file, '-' for standard input");
    tol_options.push_back(cmd->add_option("--tol", tol_flag, "tolerance override (positive)"));
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
  };

  CLI::App* classify_cmd = app.add_subcommand("classify", "classify an operator");
  add_common(classify_cmd, true);
  CLI::App* fitz_cmd = app.add_subcommand("fitz", "evaluate the Fitzpatrick function");
  add_common(fitz_cmd, true);
  fitz_cmd->add_option("--x", x_text, "primal point, comma-separated")->required();
  fitz_cmd->add_option("--xstar", xstar_text, "dual point, comma-separated")->required();
  CLI::App* modulus_cmd = app.add_subcommand("modulus", "compute the cocoercivity modulus");
  add_common(modulus_cmd, true);
  CLI::App* gallery_cmd = app.add_subcommand("gallery", "list or sweep the example gallery");
  add_common(gallery_cmd, false);
  CLI::Option* name_opt =
      gallery_cmd->add_option("--name", gallery_name_value, "gallery entry to classify");
  CLI::Option* from_opt =
      gallery_cmd->add_option("--from", sweep_from_value, "first parameter value");
  CLI::Option* to_opt = gallery_cmd->add_option("--to", sweep_to_value, "last parameter value");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out = app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out = app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err = std::string(e.what()) + "\n";
    return 2;
  }

  try {
    if (tol_flag <= 0.0) throw CliError(3, "--tol must be positive");

    if (gallery_cmd->parsed()) {
      std::optional<std::string> gallery_name;
      std::optional<int> sweep_from, sweep_to;
      if (name_opt->count() > 0) gallery_name = gallery_name_value;
      if (from_opt->count() > 0) sweep_from = sweep_from_value;
      if (to_opt->count() > 0) sweep_to = sweep_to_value;
      out = run_gallery(gallery_name, sweep_from, sweep_to, tol_flag, format);
      return 0;
    }

    OperatorSpec spec = parse_spec(detail::read_input(input_path, stdin_text));
    bool tol_overridden = false;
    for (const CLI::Option* opt : tol_options) tol_overridden |= opt->count() > 0;
    if (tol_overridden) spec.tolerance = tol_flag;

    if (classify_cmd->parsed()) {
      out = run_classify(spec, format);
    } else if (fitz_cmd->parsed()) {
      out = run_fitz(spec, detail::parse_csv_vector(x_text, "--x"),
                     detail::parse_csv_vector(xstar_text, "--xstar"), format);
    } else if (modulus_cmd->parsed()) {
      out = run_modulus(spec, format);
    }
    return 0;
  } catch (...) {
    return translate_current_failure(err);
  }
}

}  // namespace monorel::cli
