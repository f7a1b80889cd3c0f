#include <cctype>
#include <cmath>

#include "nilharm/cli.hpp"

namespace nilharm {

namespace {
constexpr const char* kVersion = "0.1.0";
}

Report::Report(std::string task, std::string group) {
  doc_["task"] = std::move(task);
  doc_["group"] = std::move(group);
  doc_["parameters"] = nlohmann::ordered_json::object();
  doc_["environment"] = nlohmann::ordered_json::object();
  doc_["environment"]["version"] = kVersion;
  doc_["results"] = nlohmann::ordered_json::object();
  doc_["checks"] = nlohmann::ordered_json::array();
  doc_["overall_pass"] = true;
  doc_["wall_time_ms"] = 0;
}

void Report::set_param(const std::string& key, nlohmann::ordered_json value) {
  doc_["parameters"][key] = std::move(value);
}

void Report::set_env(const std::string& key, nlohmann::ordered_json value) {
  doc_["environment"][key] = std::move(value);
}

void Report::set_result(const std::string& key, nlohmann::ordered_json value) {
  doc_["results"][key] = std::move(value);
}

void Report::add_check(const std::string& name, double value, double tolerance) {
  const bool pass = std::isfinite(value) && value <= tolerance;
  doc_["checks"].push_back(
      {{"name", name}, {"value", value}, {"tolerance", tolerance}, {"pass", pass}});
  all_pass_ = all_pass_ && pass;
}

void Report::add_check_at_least(const std::string& name, double value, double threshold) {
  const bool pass = std::isfinite(value) && value >= threshold;
  doc_["checks"].push_back(
      {{"name", name}, {"value", value}, {"threshold", threshold}, {"pass", pass}});
  all_pass_ = all_pass_ && pass;
}

void Report::add_check(const std::string& name, bool pass) {
  doc_["checks"].push_back({{"name", name}, {"pass", pass}});
  all_pass_ = all_pass_ && pass;
}

void Report::add_failure(const std::string& name, const std::string& message) {
  doc_["checks"].push_back({{"name", name}, {"error", message}, {"pass", false}});
  all_pass_ = false;
}

bool Report::overall_pass() const { return all_pass_; }

void Report::set_wall_time_ms(std::int64_t ms) { doc_["wall_time_ms"] = ms; }

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json out = doc_;
  out["overall_pass"] = all_pass_;
  return out;
}

std::string Report::to_string() const { return to_json().dump(2) + "\n"; }

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    size_t pos = 0;
    const double v = std::stod(text, &pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw SpecError(what + ": cannot parse number from '" + text + "'");
  }
}

}  // namespace

Eigen::VectorXd parse_vector(const std::string& text, const std::string& what) {
  const auto parts = split(text, ';');
  Eigen::VectorXd out(parts.size());
  for (size_t i = 0; i < parts.size(); ++i) out[i] = parse_double(parts[i], what);
  return out;
}

MultiIndex parse_multi_index(const std::string& text, const std::string& what) {
  const auto parts = split(text, ';');
  MultiIndex out(parts.size());
  for (size_t i = 0; i < parts.size(); ++i) {
    const double v = parse_double(parts[i], what);
    out[i] = static_cast<int>(std::lround(v));
    if (out[i] < 0 || std::abs(v - out[i]) > 0.0)
      throw SpecError(what + ": entries must be nonnegative integers, got '" + parts[i] + "'");
  }
  return out;
}

ChainTerm parse_chain_term(const TwoStepAlgebra& a, const std::string& text) {
  const auto fields = split(text, '|');
  if (fields.empty() || fields.size() > 3)
    throw SpecError("term '" + text + "': expected 'lambda|alpha|coeff' with 1 to 3 fields");
  ChainTerm term;
  term.lambda = parse_vector(fields[0], "term lambda");
  if (term.lambda.size() != a.k())
    throw SpecError("term '" + text + "': lambda needs " + std::to_string(a.k()) +
                    " components for this group");
  if (a.m() % 2 != 0)
    throw SpecError("term '" + text + "': group has odd horizontal dimension, no eigenfunctions");
  const int n = a.m() / 2;
  if (fields.size() >= 2 && !fields[1].empty()) {
    term.alpha = parse_multi_index(fields[1], "term alpha");
    if (static_cast<int>(term.alpha.size()) != n)
      throw SpecError("term '" + text + "': alpha needs " + std::to_string(n) + " components");
  } else {
    term.alpha.assign(n, 0);
  }
  if (fields.size() == 3 && !fields[2].empty()) {
    const auto re_im = split(fields[2], ',');
    if (re_im.size() > 2) throw SpecError("term '" + text + "': coefficient is 're' or 're,im'");
    const double re = parse_double(re_im[0], "term coefficient");
    const double im = re_im.size() == 2 ? parse_double(re_im[1], "term coefficient") : 0.0;
    term.coeff = {re, im};
  }
  return term;
}

}  // namespace nilharm
