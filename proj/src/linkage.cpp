#include "screwmob/linkage.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace screwmob {

namespace {

// Minimal arithmetic expression evaluator for screw entries that reference
// named parameters, e.g. "-2*L" or "L/2". Supports + - * / and parentheses.
class ExprParser {
 public:
  ExprParser(const std::string& s, const std::map<std::string, double>& params)
      : s_(s), params_(params) {}

  double parse() {
    const double v = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw LinkageError("expression '" + s_ + "': trailing characters");
    return v;
  }

 private:
  double expr() {
    double v = term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        v += term();
      } else if (peek() == '-') {
        ++pos_;
        v -= term();
      } else {
        return v;
      }
    }
  }
  double term() {
    double v = factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        v *= factor();
      } else if (peek() == '/') {
        ++pos_;
        const double d = factor();
        if (d == 0.0) throw LinkageError("expression '" + s_ + "': division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  double factor() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -factor();
    }
    if (peek() == '+') {
      ++pos_;
      return factor();
    }
    if (peek() == '(') {
      ++pos_;
      const double v = expr();
      skip_ws();
      if (peek() != ')')
        throw LinkageError("expression '" + s_ + "': missing ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      size_t end;
      const double v = std::stod(s_.substr(pos_), &end);
      pos_ += end;
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
      std::string name;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        name += s_[pos_++];
      auto it = params_.find(name);
      if (it == params_.end())
        throw LinkageError("expression '" + s_ + "': unknown parameter '" + name + "'");
      return it->second;
    }
    throw LinkageError("expression '" + s_ + "': unexpected character");
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  const std::string& s_;
  const std::map<std::string, double>& params_;
  size_t pos_ = 0;
};

double entry_value(const nlohmann::json& j,
                   const std::map<std::string, double>& params,
                   const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return ExprParser(j.get<std::string>(), params).parse();
  throw LinkageError(where + ": screw entry must be a number or expression string");
}

JointKind parse_kind(const std::string& s, const std::string& where) {
  if (s == "revolute") return JointKind::Revolute;
  if (s == "prismatic") return JointKind::Prismatic;
  if (s == "helical") return JointKind::Helical;
  throw LinkageError(where + ": unknown joint kind '" + s + "'");
}

Linkage from_json(const nlohmann::json& doc,
                  const std::map<std::string, double>& overrides) {
  Linkage lk;
  lk.name = doc.value("name", "");

  std::map<std::string, double> params;
  if (doc.contains("parameters")) {
    for (auto it = doc["parameters"].begin(); it != doc["parameters"].end(); ++it)
      params[it.key()] = it.value().get<double>();
  }
  for (const auto& [k, v] : overrides) params[k] = v;

  if (!doc.contains("joints") || !doc["joints"].is_array() || doc["joints"].empty())
    throw LinkageError("linkage: missing or empty 'joints' array");
  std::map<int, Joint> by_id;
  for (const auto& jj : doc["joints"]) {
    Joint j;
    if (!jj.contains("id")) throw LinkageError("joint: missing 'id'");
    j.id = jj["id"].get<int>();
    const std::string where = "joint " + std::to_string(j.id);
    j.kind = parse_kind(jj.value("kind", "revolute"), where);
    if (!jj.contains("screw") || jj["screw"].size() != 6)
      throw LinkageError(where + ": 'screw' must have 6 entries");
    for (int c = 0; c < 6; ++c) j.Y(c) = entry_value(jj["screw"][c], params, where);
    if (!j.Y.allFinite()) throw LinkageError(where + ": non-finite screw");
    const double wn = j.Y.head<3>().norm();
    const double vn = j.Y.tail<3>().norm();
    if (j.kind == JointKind::Prismatic) {
      if (wn > 1e-10 || std::abs(vn - 1.0) > 1e-10)
        throw LinkageError(where + ": prismatic screw must have w=0, |v|=1");
    } else {
      if (std::abs(wn - 1.0) > 1e-10)
        throw LinkageError(where + ": revolute/helical screw must have |w|=1");
    }
    if (by_id.count(j.id)) throw LinkageError(where + ": duplicate joint id");
    by_id[j.id] = j;
  }
  const int n = static_cast<int>(by_id.size());
  for (int id = 1; id <= n; ++id) {
    auto it = by_id.find(id);
    if (it == by_id.end())
      throw LinkageError("joints: ids must be contiguous 1..n, missing " +
                         std::to_string(id));
    lk.joints.push_back(it->second);
  }

  if (!doc.contains("cycles") || !doc["cycles"].is_array() || doc["cycles"].empty())
    throw LinkageError("linkage: missing or empty 'cycles' array");
  std::set<int> referenced;
  int expect_id = 1;
  for (const auto& cj : doc["cycles"]) {
    FundamentalCycle c;
    c.id = cj.value("id", expect_id);
    if (c.id != expect_id)
      throw LinkageError("cycles: ids must be contiguous 1..gamma");
    ++expect_id;
    const std::string where = "cycle " + std::to_string(c.id);
    if (!cj.contains("steps") || cj["steps"].empty())
      throw LinkageError(where + ": missing or empty 'steps'");
    std::set<int> seen;
    for (const auto& sj : cj["steps"]) {
      CycleStep st;
      st.joint = sj.at("joint").get<int>();
      st.sign = sj.value("sign", 1);
      if (st.sign != 1 && st.sign != -1)
        throw LinkageError(where + ": step sign must be +1 or -1");
      if (st.joint < 1 || st.joint > n)
        throw LinkageError(where + ": step references unknown joint " +
                           std::to_string(st.joint));
      if (!seen.insert(st.joint).second)
        throw LinkageError(where + ": joint " + std::to_string(st.joint) +
                           " repeats within the cycle");
      c.steps.push_back(st);
      referenced.insert(st.joint);
    }
    lk.cycles.push_back(c);
  }
  for (const auto& j : lk.joints)
    if (!referenced.count(j.id))
      throw LinkageError("joint " + std::to_string(j.id) +
                         " is not referenced by any cycle");
  return lk;
}

}  // namespace

Linkage load_linkage(const std::string& path,
                     const std::map<std::string, double>& overrides) {
  std::ifstream in(path);
  if (!in) throw LinkageError("cannot open linkage file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw LinkageError("parse error in " + path + ": " + e.what());
  }
  return from_json(doc, overrides);
}

Linkage parse_linkage(const std::string& json_text,
                      const std::map<std::string, double>& overrides) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw LinkageError(std::string("parse error: ") + e.what());
  }
  return from_json(doc, overrides);
}

Transform cycle_map(const Linkage& lk, int cycle_id, const Eigen::VectorXd& q) {
  Transform g = Transform::Identity();
  for (const auto& st : lk.cycle(cycle_id).steps)
    g = g * exp_twist(lk.joint(st.joint).Y, st.sign * q(st.joint - 1));
  return g;
}

Eigen::MatrixXd instantaneous_screws(const Linkage& lk, int cycle_id,
                                     const Eigen::VectorXd& q) {
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(6, lk.n());
  Transform g = Transform::Identity();
  for (const auto& st : lk.cycle(cycle_id).steps) {
    const Vec6& Y = lk.joint(st.joint).Y;
    g = g * exp_twist(Y, st.sign * q(st.joint - 1));
    S.col(st.joint - 1) = st.sign * (adjoint(g) * Y);
  }
  return S;
}

Eigen::MatrixXd stacked_jacobian(const Linkage& lk, const Eigen::VectorXd& q) {
  Eigen::MatrixXd J(6 * lk.num_cycles(), lk.n());
  for (int l = 1; l <= lk.num_cycles(); ++l)
    J.middleRows(6 * (l - 1), 6) = instantaneous_screws(lk, l, q);
  return J;
}

RankResult numeric_rank(const Eigen::MatrixXd& m, double tol_rank) {
  RankResult r;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  r.singular_values = svd.singularValues();
  const double smax = r.singular_values.size() ? r.singular_values(0) : 0.0;
  r.rank = 0;
  for (int i = 0; i < r.singular_values.size(); ++i)
    if (smax > 0.0 && r.singular_values(i) > tol_rank * smax) ++r.rank;
  r.kernel = svd.matrixV().rightCols(m.cols() - r.rank);
  r.cokernel = svd.matrixU().rightCols(m.rows() - r.rank);
  return r;
}

}  // namespace screwmob
