// Command-line front end: flow evaluation, ball-map queries, verification
// suites, combinatorics queries, and trajectory export. All I/O is JSON/CSV
// on files or stdin/stdout. Exit codes: 0 success, 1 verification failure,
// 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tpflow/amplituhedron.hpp"
#include "tpflow/contractive_flow.hpp"
#include "tpflow/cyclic.hpp"
#include "tpflow/electrical.hpp"
#include "tpflow/json_io.hpp"
#include "tpflow/plucker.hpp"
#include "tpflow/sampling.hpp"
#include "tpflow/trajectory.hpp"
#include "tpflow/unipotent.hpp"
#include "tpflow/verify.hpp"

namespace {

using tpflow::Json;

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path);
  out << j.dump(2) << "\n";
}

tpflow::Matrix<double> point_matrix(const std::string& path, int rows, int cols,
                                    const char* what) {
  const auto mv = tpflow::matrix_from_json(tpflow::read_json_input(path));
  const auto m = mv.as_real();
  if (m.rows() != rows || m.cols() != cols)
    throw std::invalid_argument(std::string(what) + " must be " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  return m;
}

tpflow::Normalization parse_normalization(const std::string& s) {
  if (s == "raw") return tpflow::Normalization::Raw;
  if (s == "max-abs") return tpflow::Normalization::MaxAbs;
  if (s == "first-nonzero") return tpflow::Normalization::FirstNonzero;
  throw CLI::ValidationError("--normalize", "unknown normalization \"" + s + "\"");
}

const char* positivity_name(tpflow::Positivity p) {
  switch (p) {
    case tpflow::Positivity::TotallyPositive: return "TP";
    case tpflow::Positivity::Boundary: return "TNN_boundary";
    default: return "not_TNN";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flows, charts, and ball maps on totally nonnegative spaces"};
  app.require_subcommand(1);

  // ---- plucker
  auto* cmd_plucker = app.add_subcommand("plucker", "Plücker coordinates of a matrix");
  std::string plucker_in = "-", plucker_out, plucker_norm = "default";
  cmd_plucker->add_option("--matrix", plucker_in, "matrix JSON file or - for stdin");
  cmd_plucker->add_option("--out", plucker_out, "output path (default stdout)");
  cmd_plucker->add_option("--normalize", plucker_norm, "raw | max-abs | first-nonzero");

  // ---- classify
  auto* cmd_classify = app.add_subcommand("classify", "positivity class of a Plücker vector");
  std::string classify_in = "-", classify_out;
  double classify_tol = 1e-9;
  cmd_classify->add_option("--plucker", classify_in, "Plücker JSON file or -");
  cmd_classify->add_option("--tol", classify_tol, "float tolerance");
  cmd_classify->add_option("--out", classify_out, "output path");

  // ---- flow {gr|u|amp}
  auto* cmd_flow = app.add_subcommand("flow", "evaluate a flow at time t");
  cmd_flow->require_subcommand(1);
  auto* flow_gr = cmd_flow->add_subcommand("gr", "chart flow on Gr(k,n)");
  int fg_k = 2, fg_n = 4;
  double fg_t = 1.0;
  std::string fg_point = "-", fg_out;
  flow_gr->add_option("--k", fg_k)->required();
  flow_gr->add_option("--n", fg_n)->required();
  flow_gr->add_option("--t", fg_t)->required();
  flow_gr->add_option("--point", fg_point, "chart point JSON (k x (n-k))");
  flow_gr->add_option("--out", fg_out);

  auto* flow_u = cmd_flow->add_subcommand("u", "a(t) flow on unitriangular matrices");
  int fu_n = 3;
  std::string fu_t = "2";
  std::string fu_matrix = "-", fu_out;
  double fu_c = 2.0;
  flow_u->add_option("--n", fu_n)->required();
  flow_u->add_option("--t", fu_t, "flow time, t > 0; \"p/q\" stays exact on rational input")
      ->required();
  flow_u->add_option("--matrix", fu_matrix, "unitriangular matrix JSON (n x n)");
  flow_u->add_option("--c", fu_c, "b-coordinate base, c > 1");
  flow_u->add_option("--out", fu_out);

  auto* flow_amp = cmd_flow->add_subcommand("amp", "f0 flow on amplituhedron coordinates");
  int fa_k = 1, fa_m = 2, fa_n = 4;
  double fa_t = 1.0;
  std::string fa_point = "-", fa_out;
  flow_amp->add_option("--k", fa_k)->required();
  flow_amp->add_option("--m", fa_m)->required();
  flow_amp->add_option("--n", fa_n)->required();
  flow_amp->add_option("--t", fa_t)->required();
  flow_amp->add_option("--point", fa_point, "A' JSON (k x m)");
  flow_amp->add_option("--out", fa_out);

  // ---- ballmap
  auto* cmd_ball = app.add_subcommand("ballmap", "retract to or extend from the ball");
  int bm_k = 2, bm_n = 4;
  double bm_r = 0.1, bm_tol = 1e-10;
  std::string bm_point = "-", bm_out, bm_map = "alpha";
  cmd_ball->add_option("--k", bm_k)->required();
  cmd_ball->add_option("--n", bm_n)->required();
  cmd_ball->add_option("--r", bm_r, "ball radius");
  cmd_ball->add_option("--tol", bm_tol, "bisection tolerance");
  cmd_ball->add_option("--map", bm_map, "alpha (retract) | beta (extend)");
  cmd_ball->add_option("--point", bm_point, "chart point JSON (k x (n-k))");
  cmd_ball->add_option("--out", bm_out);

  // ---- verify
  auto* cmd_verify = app.add_subcommand("verify", "run a module verification suite");
  std::string verify_suite;
  uint64_t verify_seed = 0;
  double verify_tol = 1e-9;
  int verify_n = 5;
  std::string verify_out;
  cmd_verify->add_option("suite", verify_suite, "gr | flow | u | amp | en | all")->required();
  cmd_verify->add_option("--seed", verify_seed);
  cmd_verify->add_option("--tol", verify_tol);
  cmd_verify->add_option("--n", verify_n, "exhaustive bound for the electrical suite");
  cmd_verify->add_option("--out", verify_out);

  // ---- nc
  auto* cmd_nc = app.add_subcommand("nc", "noncrossing partition queries");
  cmd_nc->require_subcommand(1);
  auto* nc_list = cmd_nc->add_subcommand("list", "enumerate NC_n");
  int ncl_n = 3;
  std::string ncl_out;
  nc_list->add_option("--n", ncl_n)->required();
  nc_list->add_option("--out", ncl_out);
  auto* nc_asigma = cmd_nc->add_subcommand("asigma", "A_sigma vector of a partition");
  int nca_n = 3;
  std::string nca_sigma, nca_out;
  nc_asigma->add_option("--n", nca_n)->required();
  nc_asigma->add_option("--sigma", nca_sigma, "partition like \"1,3|5\"")->required();
  nc_asigma->add_option("--out", nca_out);
  auto* nc_krew = cmd_nc->add_subcommand("kreweras", "dual noncrossing partition");
  int nck_n = 3;
  std::string nck_sigma, nck_out;
  nc_krew->add_option("--n", nck_n)->required();
  nc_krew->add_option("--sigma", nck_sigma)->required();
  nc_krew->add_option("--out", nck_out);

  // ---- elec
  auto* cmd_elec = app.add_subcommand("elec", "electrical network operations");
  cmd_elec->require_subcommand(1);
  auto* elec_resp = cmd_elec->add_subcommand("response", "response matrix of a network");
  std::string er_graph = "-", er_out;
  elec_resp->add_option("--graph", er_graph, "network JSON file or -");
  elec_resp->add_option("--out", er_out);
  auto* elec_xn = cmd_elec->add_subcommand("xn", "numeric search for a point of X_n");
  int ex_n = 3;
  uint64_t ex_seed = 0;
  double ex_tol = 1e-10;
  std::string ex_out;
  elec_xn->add_option("--n", ex_n)->required();
  elec_xn->add_option("--seed", ex_seed);
  elec_xn->add_option("--tol", ex_tol);
  elec_xn->add_option("--out", ex_out);

  // ---- amp
  auto* cmd_amp = app.add_subcommand("amp", "amplituhedron projection and hull");
  cmd_amp->require_subcommand(1);
  auto* amp_project = cmd_amp->add_subcommand("project", "map a TNN point to A' coordinates");
  int ap_k = 1, ap_m = 2, ap_n = 4;
  std::string ap_point = "-", ap_out;
  amp_project->add_option("--k", ap_k)->required();
  amp_project->add_option("--m", ap_m)->required();
  amp_project->add_option("--n", ap_n)->required();
  amp_project->add_option("--point", ap_point, "k x n matrix JSON");
  amp_project->add_option("--out", ap_out);
  auto* amp_hull = cmd_amp->add_subcommand("hull", "facet inequalities of the k=1 polytope");
  int ah_k = 1, ah_m = 2, ah_n = 4;
  std::string ah_out;
  amp_hull->add_option("--k", ah_k);
  amp_hull->add_option("--m", ah_m)->required();
  amp_hull->add_option("--n", ah_n)->required();
  amp_hull->add_option("--out", ah_out);

  // ---- trajectory
  auto* cmd_traj = app.add_subcommand("trajectory", "export a flow trajectory as CSV");
  std::string tr_space = "gr", tr_grid = "0:2:0.25", tr_point = "-", tr_out = "-";
  int tr_k = 2, tr_n = 4, tr_m = 2;
  double tr_c = 2.0;
  cmd_traj->add_option("--space", tr_space, "gr | u | amp")->required();
  cmd_traj->add_option("--k", tr_k);
  cmd_traj->add_option("--n", tr_n);
  cmd_traj->add_option("--m", tr_m);
  cmd_traj->add_option("--c", tr_c, "b-coordinate base for u");
  cmd_traj->add_option("--t-grid", tr_grid, "\"0:2:0.25\" or \"0.5,1,2\"");
  cmd_traj->add_option("--point", tr_point, "starting point JSON");
  cmd_traj->add_option("--out", tr_out, "CSV output path or -");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_plucker->parsed()) {
      const auto mv = tpflow::matrix_from_json(tpflow::read_json_input(plucker_in));
      Json out;
      if (mv.is_rational()) {
        auto p = tpflow::plucker(mv.rational());
        if (plucker_norm != "default") tpflow::normalize_plucker(p, parse_normalization(plucker_norm));
        out = tpflow::plucker_to_json(p);
      } else {
        auto p = tpflow::plucker(mv.real());
        if (plucker_norm != "default") tpflow::normalize_plucker(p, parse_normalization(plucker_norm));
        out = tpflow::plucker_to_json(p);
      }
      emit(out, plucker_out);
    } else if (cmd_classify->parsed()) {
      const auto pv = tpflow::plucker_from_json(tpflow::read_json_input(classify_in));
      tpflow::PositivityClass cls;
      if (pv.is_rational()) cls = tpflow::classify_positivity(pv.rational(), classify_tol);
      else cls = tpflow::classify_positivity(pv.real(), classify_tol);
      Json out;
      out["class"] = positivity_name(cls.kind);
      out["margin"] = cls.margin;
      if (cls.zero_witness) out["witness"] = tpflow::subset_key(*cls.zero_witness);
      if (cls.sign_witness)
        out["witness"] = Json::array({tpflow::subset_key(cls.sign_witness->first),
                                      tpflow::subset_key(cls.sign_witness->second)});
      emit(out, classify_out);
    } else if (flow_gr->parsed()) {
      const auto es = tpflow::tau_eigensystem(fg_k, fg_n);
      const auto a0 = point_matrix(fg_point, fg_k, fg_n - fg_k, "chart point");
      const auto a = tpflow::flow_chart(es, fg_t, a0);
      Json out;
      out["t"] = fg_t;
      out["chart"] = tpflow::matrix_to_json(a);
      out["plucker"] = tpflow::plucker_to_json(tpflow::plucker(tpflow::chart_embed(es, a)));
      emit(out, fg_out);
    } else if (flow_u->parsed()) {
      const auto mv = tpflow::matrix_from_json(tpflow::read_json_input(fu_matrix));
      Json out;
      out["t"] = fu_t;
      const bool exact_t = fu_t.find('.') == std::string::npos;
      if (mv.is_rational() && exact_t) {
        const auto& md = mv.rational();
        if (md.rows() != fu_n || md.cols() != fu_n)
          throw std::invalid_argument("matrix must be n x n");
        for (int i = 0; i < fu_n; ++i) {
          if (md(i, i) != tpflow::Rat(1)) throw std::invalid_argument("matrix must be unitriangular");
          for (int j = 0; j < i; ++j)
            if (md(i, j) != 0) throw std::invalid_argument("matrix must be unitriangular");
        }
        const auto x = tpflow::UnipotentMatrix<tpflow::Rat>::from_dense(md);
        const auto y = tpflow::a_flow(tpflow::rat_from_string(fu_t), x);
        out["matrix"] = tpflow::matrix_to_json(y.dense());
        out["b_norm"] = tpflow::to_double(tpflow::b_coords(y, tpflow::Rat(2)).norm_inf());
      } else {
        const auto md = mv.as_real();
        if (md.rows() != fu_n || md.cols() != fu_n)
          throw std::invalid_argument("matrix must be n x n");
        const auto x = tpflow::UnipotentMatrix<double>::from_dense(md);
        const auto y = tpflow::a_flow(tpflow::scalar_traits<double>::from_string(fu_t), x);
        out["matrix"] = tpflow::matrix_to_json(y.dense());
        out["b_norm"] = tpflow::to_double(tpflow::b_coords(y, fu_c).norm_inf());
      }
      emit(out, fu_out);
    } else if (flow_amp->parsed()) {
      const auto spec = tpflow::build_spec(fa_k, fa_m, fa_n);
      const auto a0 = point_matrix(fa_point, fa_k, fa_m, "amplituhedron point");
      Json out;
      out["t"] = fa_t;
      out["point"] = tpflow::matrix_to_json(tpflow::flow_m(spec, fa_t, a0));
      emit(out, fa_out);
    } else if (cmd_ball->parsed()) {
      const auto es = tpflow::tau_eigensystem(bm_k, bm_n);
      const auto spec = tpflow::make_chart_flow_spec(es, 1e-9);
      const auto a0 = point_matrix(bm_point, bm_k, bm_n - bm_k, "chart point");
      tpflow::Point p;
      for (int i = 0; i < a0.rows(); ++i)
        for (int j = 0; j < a0.cols(); ++j) p.push_back(a0(i, j));
      tpflow::BallMapResult res;
      if (bm_map == "alpha") res = tpflow::retract_to_ball(spec, p, bm_r, bm_tol);
      else if (bm_map == "beta") res = tpflow::extend_from_ball(spec, p, bm_r, bm_tol);
      else throw CLI::ValidationError("--map", "use alpha or beta");
      Json out;
      out["t_r"] = res.t_r;
      out["t_boundary"] = res.t_boundary;
      out["image"] = res.image;
      out["residual"] = res.residual;
      emit(out, bm_out);
    } else if (cmd_verify->parsed()) {
      bool known = false;
      for (const auto& s : tpflow::known_suites()) known = known || s == verify_suite;
      if (!known) {
        std::cerr << "unknown suite \"" << verify_suite << "\"; choose one of:";
        for (const auto& s : tpflow::known_suites()) std::cerr << " " << s;
        std::cerr << "\n";
        return 2;
      }
      const auto report = tpflow::run_verify_suite(verify_suite, verify_seed, verify_tol, verify_n);
      emit(report.to_json(), verify_out);
      return report.failures() == 0 && report.coverage_complete ? 0 : 1;
    } else if (nc_list->parsed()) {
      Json out = Json::array();
      for (const auto& s : tpflow::enumerate_nc(ncl_n)) out.push_back(s.to_string());
      Json wrap;
      wrap["n"] = ncl_n;
      wrap["count"] = out.size();
      wrap["partitions"] = out;
      emit(wrap, ncl_out);
    } else if (nc_asigma->parsed()) {
      const auto sigma = tpflow::nc_from_string(nca_n, nca_sigma);
      const auto vec = tpflow::a_sigma(sigma);
      Json terms = Json::object();
      const auto subs = tpflow::k_subsets(2 * nca_n, nca_n - 1);
      for (size_t i = 0; i < subs.size(); ++i)
        if (vec[i] != 0) terms[tpflow::subset_key(subs[i])] = vec[i];
      Json out;
      out["sigma"] = sigma.to_string();
      out["terms"] = terms;
      emit(out, nca_out);
    } else if (nc_krew->parsed()) {
      const auto sigma = tpflow::nc_from_string(nck_n, nck_sigma);
      const auto comp = tpflow::kreweras(sigma);
      std::string s;
      for (size_t p = 0; p < comp.size(); ++p) {
        if (p) s += '|';
        for (size_t i = 0; i < comp[p].size(); ++i) {
          if (i) s += ',';
          s += std::to_string(comp[p][i]);
        }
      }
      Json out;
      out["sigma"] = sigma.to_string();
      out["kreweras"] = s;
      emit(out, nck_out);
    } else if (elec_resp->parsed()) {
      const auto net = tpflow::network_from_json(tpflow::read_json_input(er_graph));
      emit(tpflow::matrix_to_json(tpflow::response_matrix(net)), er_out);
    } else if (elec_xn->parsed()) {
      const auto res = tpflow::xn_search(ex_n, ex_seed, ex_tol);
      Json out;
      out["success"] = res.success;
      out["message"] = res.message;
      if (res.success) {
        out["matrix"] = tpflow::matrix_to_json(res.matrix);
        out["relation_residual"] = res.relation_residual;
        out["h_residual"] = res.h_residual;
        out["tnn"] = res.tnn;
        out["iterations"] = res.iterations;
      }
      emit(out, ex_out);
      return res.success ? 0 : 1;
    } else if (amp_project->parsed()) {
      const auto spec = tpflow::build_spec(ap_k, ap_m, ap_n);
      const auto m = point_matrix(ap_point, ap_k, ap_n, "point");
      emit(tpflow::matrix_to_json(tpflow::amplituhedron_map(spec, m)), ap_out);
    } else if (amp_hull->parsed()) {
      if (ah_k != 1) throw CLI::ValidationError("--k", "hull export requires k = 1");
      const auto spec = tpflow::build_spec(1, ah_m, ah_n);
      const auto hull = tpflow::build_hull(tpflow::amplituhedron_vertices(spec));
      Json facets = Json::array();
      for (size_t f = 0; f < hull.normals.size(); ++f)
        facets.push_back(Json{{"normal", hull.normals[f]}, {"offset", hull.offsets[f]}});
      Json out;
      out["m"] = ah_m;
      out["n"] = ah_n;
      out["facets"] = facets;
      emit(out, ah_out);
    } else if (cmd_traj->parsed()) {
      const auto ts = tpflow::parse_t_grid(tr_grid);
      std::ostringstream csv;
      if (tr_space == "gr") {
        const auto es = tpflow::tau_eigensystem(tr_k, tr_n);
        const auto a0 = point_matrix(tr_point, tr_k, tr_n - tr_k, "chart point");
        tpflow::trajectory_gr(es, a0, ts, csv);
      } else if (tr_space == "u") {
        const auto md = point_matrix(tr_point, tr_n, tr_n, "matrix");
        tpflow::trajectory_u(tpflow::UnipotentMatrix<double>::from_dense(md), tr_c, ts, csv);
      } else if (tr_space == "amp") {
        const auto spec = tpflow::build_spec(tr_k, tr_m, tr_n);
        const auto a0 = point_matrix(tr_point, tr_k, tr_m, "point");
        tpflow::trajectory_amp(spec, a0, ts, csv);
      } else {
        throw CLI::ValidationError("--space", "use gr, u, or amp");
      }
      if (tr_out.empty() || tr_out == "-") {
        std::cout << csv.str();
      } else {
        std::ofstream out(tr_out);
        if (!out) throw std::runtime_error("cannot open " + tr_out);
        out << csv.str();
      }
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
