#include "phasespace/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "phasespace/errors.hpp"

namespace phasespace::io {
namespace {

double number(const Json& v, const char* what) {
  if (!v.is_number()) {
    throw Error(ErrorKind::ParseError, std::string(what) + " must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorKind::ParseError, std::string(what) + " is not finite");
  return x;
}

void emit(const Json& v, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        emit(item, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& item : v) flat = flat && !item.is_structured();
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += flat || indent < 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        emit(item, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

void RunConfig::validate() const {
  const auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
  if (!positive(hbar)) throw Error(ErrorKind::InvalidArgument, "hbar must be positive");
  if (!positive(tol.herm_tol) || !positive(tol.trace_tol) || !positive(tol.psd_tol) ||
      !positive(tol.cluster_tol)) {
    throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
  }
  if (stride < 1) throw Error(ErrorKind::InvalidArgument, "stride must be at least 1");
}

RunConfig config_from_json(const Json& doc, RunConfig base) {
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "config must be a JSON object");
  if (doc.contains("hbar")) base.hbar = number(doc["hbar"], "hbar");
  if (doc.contains("cluster_tol")) base.tol.cluster_tol = number(doc["cluster_tol"], "cluster_tol");
  if (doc.contains("trace_tol")) base.tol.trace_tol = number(doc["trace_tol"], "trace_tol");
  if (doc.contains("psd_tol")) base.tol.psd_tol = number(doc["psd_tol"], "psd_tol");
  if (doc.contains("herm_tol")) base.tol.herm_tol = number(doc["herm_tol"], "herm_tol");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) {
      throw Error(ErrorKind::ParseError, "seed must be a non-negative integer");
    }
    base.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("stride")) {
    if (!doc["stride"].is_number_integer()) throw Error(ErrorKind::ParseError, "stride must be an integer");
    base.stride = doc["stride"].get<int>();
  }
  base.validate();
  return base;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  Json doc;
  doc["n"] = m.rows();
  doc["entries"] = std::move(rows);
  return doc;
}

ComplexMatrix matrix_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries")) {
    throw Error(ErrorKind::ParseError, "matrix document needs 'n' and 'entries'");
  }
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    throw Error(ErrorKind::ParseError, "'n' must be a positive integer");
  }
  const auto n = static_cast<Eigen::Index>(doc["n"].get<long long>());
  const Json& entries = doc["entries"];
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != n) {
    throw Error(ErrorKind::ParseError, "'entries' must hold n rows");
  }
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Json& row = entries[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw Error(ErrorKind::ParseError, "every row must hold n entries");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2) {
        throw Error(ErrorKind::ParseError, "entries must be [re, im] pairs");
      }
      m(r, c) = Complex(number(e[0], "real part"), number(e[1], "imaginary part"));
    }
  }
  return m;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump(const Json& doc, int indent) {
  std::string out;
  emit(doc, indent, 0, out);
  return out;
}

SamplingPlan plan_from_json(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::InvalidPlan, "plan must be a JSON object");
  SamplingPlan plan;
  try {
    if (!doc.contains("spectrum") || !doc["spectrum"].is_string()) {
      throw Error(ErrorKind::InvalidPlan, "plan needs a 'spectrum' string");
    }
    set_plan_spectrum(plan, doc["spectrum"].get<std::string>());
    if (doc.contains("n")) {
      if (!doc["n"].is_number_integer()) throw Error(ErrorKind::InvalidPlan, "'n' must be an integer");
      const int n = doc["n"].get<int>();
      if (n != plan.n) throw Error(ErrorKind::InvalidPlan, "'n' disagrees with the spectrum");
    }
    if (!doc.contains("count") || !doc["count"].is_number_integer()) {
      throw Error(ErrorKind::InvalidPlan, "plan needs an integer 'count'");
    }
    plan.count = doc["count"].get<std::int64_t>();
    if (doc.contains("observable_scale")) {
      if (!doc["observable_scale"].is_number()) {
        throw Error(ErrorKind::InvalidPlan, "'observable_scale' must be a number");
      }
      plan.observable_scale = doc["observable_scale"].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidPlan, e.what());
  }
  plan.validate();
  return plan;
}

Json plan_to_json(const SamplingPlan& plan) {
  Json doc;
  doc["n"] = plan.n;
  if (const auto* s = std::get_if<Spectrum>(&plan.spectrum)) {
    doc["spectrum"] = format_spectrum(*s);
  } else {
    doc["spectrum"] = "random:" + std::to_string(std::get<RandomSpectrum>(plan.spectrum).levels) +
                      "," + std::to_string(plan.n);
  }
  doc["count"] = plan.count;
  doc["observable_scale"] = plan.observable_scale;
  return doc;
}

}  // namespace phasespace::io
