#include "report.hpp"

#include <cmath>
#include <fstream>

#include "thopf/error.hpp"

namespace thopf::cli {

using nlohmann::json;

namespace {

// JSON has no infinity; unbounded values are written as null.
json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

} // namespace

json to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const A6Check& a6) {
  return {{"holds", a6.holds()},
          {"b_star", a6.b_star},
          {"a_minus", a6.a_minus},
          {"a_plus", a6.a_plus},
          {"x_minus", a6.x_minus},
          {"x_plus", a6.x_plus},
          {"M1", a6.M1},
          {"M2", a6.M2},
          {"flags",
           {{"d2_gt_d1", a6.d2_gt_d1},
            {"b_below_bstar", a6.b_below_bstar},
            {"a_in_window", a6.a_in_window},
            {"m1_le_m2", a6.m1_le_m2}}}};
}

json to_json(const TuringReport& tr) {
  json j = {{"u0", tr.u0},
            {"A0", tr.A0},
            {"B0", tr.B0},
            {"r_T", tr.r_T},
            {"r_H", tr.r_H},
            {"cutoff", tr.cutoff},
            {"n_T", tr.n_T},
            {"r_star", tr.r_star},
            {"n_I", tr.n_I},
            {"r_second", tr.r_second},
            {"mixed_mode", tr.mixed_mode()},
            {"predation_hypothesis", tr.predation_hypothesis}};
  return j;
}

json to_json(const HopfBranch& br) {
  json roots = json::array();
  for (const auto& r : br.roots) {
    roots.push_back({{"omega", r.omega}, {"C", r.C}, {"S", r.S}, {"taus", r.taus}});
  }
  return {{"n", br.n},
          {"r", br.r},
          {"P", br.P},
          {"Q", br.Q},
          {"case", to_string(br.root_case)},
          {"roots", roots}};
}

json to_json(const HopfReport& hr) {
  json branches = json::array();
  for (const auto& b : hr.branches) branches.push_back(to_json(b));
  return {{"r", hr.r},
          {"N1", hr.N1},
          {"N_Q", hr.N_Q},
          {"x_P", hr.x_P},
          {"x_Q", hr.x_Q},
          {"l_threshold", finite_or_null(hr.l_threshold)},
          {"S0", hr.S0},
          {"branches", branches},
          {"n_H", hr.n_H},
          {"tau_star", hr.tau_star},
          {"omega_star", hr.omega_star}};
}

json to_json(const BTPoint& bt) {
  return {{"tau0", bt.tau0},
          {"dG_dlambda", bt.dG_dlambda},
          {"d2G_dlambda2", bt.d2G_dlambda2}};
}

json to_json(const PlanarUnfolding& pu) {
  return {{"eps1", {{"alpha1", pu.eps1_r}, {"alpha2", pu.eps1_tau}}},
          {"eps2", {{"alpha1", pu.eps2_r}, {"alpha2", pu.eps2_tau}}},
          {"a11", pu.a11},
          {"a12", pu.a12},
          {"a21", pu.a21},
          {"a22", pu.a22},
          {"b0", pu.b0},
          {"c0", pu.c0},
          {"d0", pu.d0},
          {"p0", pu.p0},
          {"d0_minus_b0c0", pu.det()},
          {"case_tag", pu.case_tag},
          {"n_T", pu.n_T},
          {"n_I", pu.n_I},
          {"mixed_mode", pu.mixed_mode}};
}

json to_json(const NormalFormResult& nf) {
  const auto& c = nf.coeffs;
  const auto& f = c.audit;
  const auto& b = nf.basis;
  json solves = json::array();
  for (const auto& s : nf.h.solves) {
    solves.push_back({{"label", s.label}, {"condition", s.condition}, {"residual", s.residual}});
  }
  return {
      {"point",
       {{"n_T", nf.point.n_T},
        {"n_H", nf.point.n_H},
        {"r_star", nf.point.r_star},
        {"tau_star", nf.point.tau_star},
        {"omega_star", nf.point.omega_star},
        {"n_I", nf.point.n_I},
        {"r_second", nf.point.r_second}}},
      {"eigenbasis",
       {{"k1", to_json(b.k1)},
        {"k2", to_json(b.k2)},
        {"T1", to_json(b.T1)},
        {"k3", b.k3},
        {"k4", b.k4},
        {"T2", b.T2},
        {"omega0", b.omega0}}},
      {"unfolding",
       {{"f_a1z1", to_json(c.f_a1z1)},
        {"f_a2z1", to_json(c.f_a2z1)},
        {"f_a1z2", c.f_a1z2},
        {"f_a2z2", c.f_a2z2}}},
      {"cubic",
       {{"g210", to_json(c.g210)},
        {"g102", to_json(c.g102)},
        {"g111", to_json(c.g111)},
        {"g003", to_json(c.g003)}}},
      {"audit",
       {{"f200_11", to_json(f.f200_11)}, {"f110_11", to_json(f.f110_11)},
        {"f020_11", to_json(f.f020_11)}, {"f002_11", to_json(f.f002_11)},
        {"f101_13", to_json(f.f101_13)}, {"f011_13", to_json(f.f011_13)},
        {"f200_12", to_json(f.f200_12)}, {"f110_12", to_json(f.f110_12)},
        {"f020_12", to_json(f.f020_12)}, {"f002_12", to_json(f.f002_12)},
        {"f210_11", to_json(f.f210_11)}, {"f102_11", to_json(f.f102_11)},
        {"f111_13", to_json(f.f111_13)}, {"f003_13", to_json(f.f003_13)}}},
      {"solves", solves}};
}

json to_json(const PlanarEquilibrium& e) {
  return {{"kind", to_string(e.kind)},
          {"rho", e.rho},
          {"v", e.v},
          {"eigs", {to_json(e.eigs[0]), to_json(e.eigs[1])}},
          {"stable", e.stable()},
          {"residual", e.residual}};
}

json to_json(const RegionClass& rc) {
  json eq = json::array();
  for (const auto& e : rc.equilibria) eq.push_back(to_json(e));
  json pred = json::array();
  for (auto p : rc.predicted) pred.push_back(to_string(p));
  return {{"region", rc.region},
          {"eps", {{"eps1", rc.eps.eps1}, {"eps2", rc.eps.eps2}}},
          {"equilibria", eq},
          {"predicted", pred},
          {"spatial_profile", rc.spatial_profile},
          {"mixed_mode", rc.mixed_mode}};
}

json to_json(const PatternDiagnostics& d) {
  return {{"label", to_string(d.label)},
          {"mode_amps", d.mode_amps},
          {"mode_means", d.mode_means},
          {"dominant_mode", d.dominant_mode},
          {"temporal_freq", d.temporal_freq},
          {"steadiness", d.steadiness},
          {"field_range", d.field_range},
          {"field_mean", d.field_mean},
          {"u_max", d.u_max},
          {"v_max", d.v_max},
          {"window", {d.window_start, d.window_end}}};
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + path);
  out << doc.dump(2) << '\n';
}

} // namespace thopf::cli
