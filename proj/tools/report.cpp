#include "report.hpp"

#include <sstream>

namespace hrg::report {

json condition(const ConditionResult& c) {
  return {{"number", c.number}, {"name", c.name},     {"passed", c.passed},
          {"witness", c.witness}, {"detail", c.detail}, {"checked", c.checked}};
}

namespace {

json conditions(const std::vector<ConditionResult>& cs) {
  json out = json::array();
  for (auto& c : cs) out.push_back(condition(c));
  return out;
}

std::string mode_name(FaithfulnessMode m) { return m == FaithfulnessMode::AllN ? "all-n" : "bounded"; }

}  // namespace

json axioms(const AxiomReport& r) {
  return {{"mode", to_string(r.mode)},
          {"passed", r.passed()},
          {"conditions", conditions(r.conditions)},
          {"warnings", r.warnings}};
}

json ck(const CKReport& r) {
  return {{"passed", r.passed()}, {"conditions", conditions(r.conditions)}, {"warnings", r.warnings}};
}

json validation(const KGraph& g, const ValidationReport& r) {
  json issues = json::array();
  for (auto& i : r.issues) issues.push_back({{"kind", i.kind}, {"message", i.message}, {"witness", i.witness}});
  return {{"passed", r.valid},
          {"rank", g.rank()},
          {"vertices", g.num_vertices()},
          {"edges", g.num_edges()},
          {"squares", g.squares().size()},
          {"issues", issues}};
}

json periodicity(const KGraph& g, const PeriodicityResult& r) {
  json h = json::object();
  for (auto& [mu, hmu] : r.h) h[g.path_name(mu)] = g.path_name(hmu);
  json tried = json::array();
  for (auto& [p, q] : r.tried) tried.push_back({p, q});
  json out = {{"verdict", r.periodic ? "periodic" : "aperiodic-up-to-bound"},
              {"periodic", r.periodic},
              {"bound", r.bound},
              {"tried", tried},
              {"h", h}};
  if (r.periodic) {
    out["a"] = r.a;
    out["b"] = r.b;
    out["per"] = "Z(" + std::to_string(r.a) + ",-" + std::to_string(r.b) + ")";
  }
  return out;
}

json faithfulness(const IntervalBranchingSystem& bs, const FaithfulnessReport& r, unsigned confirm_up_to) {
  const KGraph& g = bs.graph;
  json attempts = json::array();
  for (auto& a : r.attempts)
    attempts.push_back({{"mu", g.path_name(a.mu)}, {"E", a.E.dim() ? a.E.to_string() : ""}, {"reason", a.reason}});
  json out = {{"passed", r.certificate.has_value()}, {"identities", r.identities}, {"attempts", attempts}};
  if (!r.certificate) return out;
  auto& c = *r.certificate;
  json cert = {{"kind", mode_name(c.mode)},
               {"mu", g.path_name(c.mu)},
               {"h_mu", g.path_name(c.hmu)},
               {"T", c.T.to_string()},
               {"E", c.E.to_string()},
               {"measure_E", c.E.measure().to_string()}};
  if (c.mode == FaithfulnessMode::AllN) {
    cert["coordinate"] = c.coordinate + 1;
    cert["piece"] = c.piece.to_string();
    cert["H"] = c.H.to_string();
    cert["H_side"] = c.H_below ? "below" : "above";
  } else {
    cert["F"] = c.F;
  }
  // Exact iteration of the certificate, independent of how it was found.
  json iter = json::array();
  std::vector<long> ns;
  if (c.mode == FaithfulnessMode::AllN)
    for (long n = 1; n <= static_cast<long>(confirm_up_to); ++n) {
      ns.push_back(n);
      ns.push_back(-n);
    }
  else
    ns = c.F;
  bool all = true;
  for (long n : ns) {
    bool ok = iterate_disjoint(c.T, c.E, n);
    all = all && ok;
    auto [lo, hi] = iterate_hull(c.T, c.E, n, c.mode == FaithfulnessMode::AllN ? c.coordinate : 0);
    iter.push_back({{"n", n}, {"disjoint", ok}, {"hull", "[" + lo + ", " + hi + "]"}});
  }
  cert["iterates"] = iter;
  cert["iterates_disjoint"] = all;
  out["certificate"] = cert;
  out["passed"] = all;
  out["conclusion"] = c.mode == FaithfulnessMode::AllN
                          ? "T^n(E) and E are disjoint up to a null set for every n != 0, so the representation is faithful"
                          : "T^n(E) and E are disjoint up to a null set for n in F only; faithfulness needs every finite F";
  return out;
}

json unitary(const WUnitaryReport& r) {
  return {{"passed", r.unitary}, {"witness", r.witness}, {"detail", r.detail}};
}

namespace {

void render(std::ostringstream& out, const json& j, const std::string& indent) {
  for (auto& [key, v] : j.items()) {
    if (key == "schema" || (v.is_string() && v.get<std::string>().empty())) continue;
    if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << indent << key << ":\n";
      for (auto& item : v) {
        if (item.contains("number")) {
          out << indent << "  (" << item["number"].get<int>() << ") " << item["name"].get<std::string>() << ": "
              << (item["passed"].get<bool>() ? "pass" : "FAIL");
          if (!item["passed"].get<bool>())
            out << "\n" << indent << "      witness " << item["witness"].get<std::string>() << "; "
                << item["detail"].get<std::string>();
          out << "\n";
        } else {
          std::string line;
          for (auto& [k2, v2] : item.items()) line += (line.empty() ? "" : ", ") + k2 + " = " + (v2.is_string() ? v2.get<std::string>() : v2.dump());
          out << indent << "  " << line << "\n";
        }
      }
    } else if (v.is_object() && !v.empty()) {
      out << indent << key << ":\n";
      render(out, v, indent + "  ");
    } else {
      out << indent << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

}  // namespace

std::string text(const json& j) {
  std::ostringstream out;
  render(out, j, "");
  return out.str();
}

}  // namespace hrg::report
