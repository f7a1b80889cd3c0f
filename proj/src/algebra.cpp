#include "nilharm/algebra.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nilharm/rng.hpp"

namespace nilharm {

TwoStepAlgebra::TwoStepAlgebra(int m, int k) : m_(m), k_(k) {
  if (m < 1 || k < 1) throw std::invalid_argument("TwoStepAlgebra: dims must be positive");
  c_.assign(static_cast<size_t>(m) * m * k, 0.0);
}

void TwoStepAlgebra::set_c(int i, int j, int l, double value) {
  if (i < 0 || j < 0 || i >= m_ || j >= m_ || l < 0 || l >= k_)
    throw std::invalid_argument("set_c: index out of range");
  if (i == j && value != 0.0) throw std::invalid_argument("set_c: diagonal entries must vanish");
  c_[(static_cast<size_t>(i) * m_ + j) * k_ + l] = value;
  c_[(static_cast<size_t>(j) * m_ + i) * k_ + l] = -value;
}

Eigen::VectorXd TwoStepAlgebra::bracket(const Eigen::VectorXd& v, const Eigen::VectorXd& w) const {
  if (v.size() != m_ || w.size() != m_)
    throw std::invalid_argument("bracket: vectors must have length m");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(k_);
  for (int i = 0; i < m_; ++i) {
    if (v[i] == 0.0) continue;
    for (int j = 0; j < m_; ++j) {
      if (w[j] == 0.0) continue;
      const double s = v[i] * w[j];
      for (int l = 0; l < k_; ++l) out[l] += s * c(i, j, l);
    }
  }
  return out;
}

GroupElement TwoStepAlgebra::multiply(const GroupElement& g, const GroupElement& h) const {
  if (g.v.size() != m_ || h.v.size() != m_ || g.z.size() != k_ || h.z.size() != k_)
    throw std::invalid_argument("multiply: element dims mismatch");
  return {g.v + h.v, g.z + h.z + 0.5 * bracket(g.v, h.v)};
}

GroupElement TwoStepAlgebra::inverse(const GroupElement& g) const {
  return {-g.v, -g.z};
}

GroupElement TwoStepAlgebra::identity() const {
  return {Eigen::VectorXd::Zero(m_), Eigen::VectorXd::Zero(k_)};
}

bool TwoStepAlgebra::is_mw(int trials, std::uint64_t seed, double tol) const {
  if (m_ % 2 != 0) return false;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd lambda = random_unit_vector(rng, k_);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m_, m_);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j)
        for (int l = 0; l < k_; ++l) B(i, j) += lambda[l] * c(i, j, l);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(B);
    if (svd.singularValues().minCoeff() > tol) return true;
  }
  return false;
}

TwoStepAlgebra make_heisenberg(int n) {
  if (n < 1) throw std::invalid_argument("make_heisenberg: n must be >= 1");
  TwoStepAlgebra a(2 * n, 1);
  for (int j = 0; j < n; ++j) a.set_c(j, n + j, 0, 1.0);
  a.set_name("heisenberg-" + std::to_string(n));
  return a;
}

TwoStepAlgebra make_free_two_step(int m) {
  if (m < 2) throw std::invalid_argument("make_free_two_step: m must be >= 2");
  TwoStepAlgebra a(m, m * (m - 1) / 2);
  int l = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) a.set_c(i, j, l++, 1.0);
  a.set_name("free2step-" + std::to_string(m));
  return a;
}

namespace {

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& msg) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << msg;
  throw std::runtime_error(os.str());
}

}  // namespace

TwoStepAlgebra parse_group(std::istream& in, const std::string& origin) {
  std::string line;
  int lineno = 0;
  int m = -1, k = -1;
  std::vector<std::array<double, 4>> entries;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "dims") {
      if (m >= 0) parse_fail(origin, lineno, "duplicate dims line");
      if (!(ls >> m >> k) || m < 1 || k < 1)
        parse_fail(origin, lineno, "dims requires two positive integers");
    } else if (word == "bracket") {
      if (m < 0) parse_fail(origin, lineno, "bracket before dims");
      int i, j, l;
      double value;
      if (!(ls >> i >> j >> l >> value))
        parse_fail(origin, lineno, "bracket requires 'i j l value'");
      if (i < 1 || j < 1 || i > m || j > m || l < 1 || l > k)
        parse_fail(origin, lineno, "bracket index out of range");
      if (i == j) parse_fail(origin, lineno, "bracket entries need i != j");
      if (i > j)
        parse_fail(origin, lineno,
                   "bracket entries must have i < j (the antisymmetric "
                   "partner is implied)");
      entries.push_back({static_cast<double>(i), static_cast<double>(j),
                         static_cast<double>(l), value});
    } else {
      parse_fail(origin, lineno, "unknown directive '" + word + "'");
    }
    std::string trailing;
    if (ls >> trailing) parse_fail(origin, lineno, "trailing tokens");
  }
  if (m < 0) parse_fail(origin, lineno, "missing dims line");
  TwoStepAlgebra a(m, k);
  for (const auto& e : entries)
    a.set_c(static_cast<int>(e[0]) - 1, static_cast<int>(e[1]) - 1, static_cast<int>(e[2]) - 1,
            e[3]);
  a.set_name(origin);
  return a;
}

TwoStepAlgebra load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open group file: " + path);
  auto a = parse_group(in, path);
  // Strip directories and extension for the report name.
  std::string stem = path;
  if (const auto slash = stem.find_last_of('/'); slash != std::string::npos)
    stem.erase(0, slash + 1);
  if (const auto dot = stem.find_last_of('.'); dot != std::string::npos) stem.erase(dot);
  a.set_name(stem);
  return a;
}

std::string write_group(const TwoStepAlgebra& a) {
  std::ostringstream os;
  os << "dims " << a.m() << " " << a.k() << "\n";
  for (int i = 0; i < a.m(); ++i)
    for (int j = i + 1; j < a.m(); ++j)
      for (int l = 0; l < a.k(); ++l)
        if (a.c(i, j, l) != 0.0)
          os << "bracket " << i + 1 << " " << j + 1 << " " << l + 1 << " " << a.c(i, j, l)
             << "\n";
  return os.str();
}

TwoStepAlgebra builtin_group(const std::string& name) {
  const auto dash = name.find_last_of('-');
  if (dash != std::string::npos) {
    const std::string head = name.substr(0, dash);
    const std::string tail = name.substr(dash + 1);
    char* end = nullptr;
    const long num = std::strtol(tail.c_str(), &end, 10);
    if (end && *end == '\0' && num > 0) {
      if (head == "heisenberg") return make_heisenberg(static_cast<int>(num));
      if (head == "free2step") return make_free_two_step(static_cast<int>(num));
    }
  }
  throw std::invalid_argument("unknown group '" + name +
                              "' (expected heisenberg-<n> or free2step-<m>)");
}

}  // namespace nilharm
