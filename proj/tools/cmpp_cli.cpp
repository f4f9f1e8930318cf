// cmpp: command-line front end.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or input error,
// 3 internal invariant violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cmpp/cmpp.hpp"

namespace {

using cmpp::io::json;

struct DiagramArgs {
  int ell = 0;
  std::string k;
  std::optional<int> i;
  std::string variant = "standard";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--ell", ell, "number of row pairs")->required()->check(CLI::PositiveNumber);
    auto* ko = cmd->add_option("--k", k, "initial conditions k_0,...,k_l");
    auto* io = cmd->add_option("--i", i, "shorthand for k_i = 1");
    ko->excludes(io);
    cmd->add_option("--variant", variant, "standard|star|starstar|reflected");
  }

  cmpp::DiagramConfig config() const {
    const auto v = cmpp::parse_variant(variant);
    if (!v) throw cmpp::usage_error("unknown variant '" + variant + "'");
    if (i) return cmpp::DiagramConfig::single(ell, *i, *v);
    if (k.empty()) throw cmpp::usage_error("one of --k or --i is required");
    return cmpp::DiagramConfig(ell, cmpp::io::parse_int_list(k), *v);
  }
};

void write_to(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw cmpp::usage_error("cannot write " + path);
  f << text;
}

int run_verify(const std::string& family, int ell, const std::string& index, int max_weight, std::optional<int> max_z,
               std::optional<int> bound, bool perturb, const std::string& json_path, const std::string& csv_path) {
  const auto fam = cmpp::parse_verify_family(family);
  if (!fam) throw cmpp::usage_error("unknown family '" + family + "'");
  const bool residue = *fam == cmpp::VerifyFamily::ag || *fam == cmpp::VerifyFamily::bressoud;

  std::vector<int> indices;
  if (index == "all") {
    for (int t = residue ? 1 : 0; t <= ell + (residue ? 1 : 0); ++t) indices.push_back(t);
  } else {
    indices.push_back(cmpp::io::parse_int(index));
  }
  std::vector<cmpp::VerifyRequest> rqs;
  for (int t : indices)
    rqs.push_back({*fam, ell, t, max_weight, max_z.value_or(max_weight), bound, perturb});

  const auto reports = cmpp::verify_all(rqs);
  bool pass = true;
  json all = json::array();
  std::string csv;
  for (const auto& r : reports) {
    pass = pass && r.pass;
    std::cout << cmpp::to_string(r.request.family) << " ell=" << r.request.ell << (residue ? " a=" : " i=")
              << r.request.index << " Q=" << r.request.max_weight << " Z=" << r.request.max_z;
    if (r.request.bound) std::cout << " M=" << *r.request.bound << " semantics=" << r.bound_semantics;
    std::cout << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.cells.size() << " cells, " << r.mismatches
              << " mismatches)\n";
    all.push_back(cmpp::io::to_json(r));
    csv += cmpp::io::to_csv(r);
  }
  if (!json_path.empty()) write_to(json_path, (all.size() == 1 ? all[0] : all).dump(2) + "\n");
  if (!csv_path.empty()) write_to(csv_path, csv);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CMPP partitions for k = 1: generating functions versus enumeration"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "compare a series with brute-force counts");
  std::string v_family, v_index;
  int v_ell = 0, v_weight = 0;
  std::optional<int> v_z, v_bound, v_a;
  bool v_perturb = false;
  std::string v_json, v_csv;
  verify->add_option("--family", v_family, "main|star|starstar|ag|bressoud|bounded-p0")->required();
  verify->add_option("--ell", v_ell)->required()->check(CLI::PositiveNumber);
  auto* vi = verify->add_option("--i", v_index, "initial-condition index, or 'all'");
  verify->add_option("--a", v_a, "residue index for ag/bressoud")->excludes(vi);
  verify->add_option("--max-weight", v_weight)->required()->check(CLI::NonNegativeNumber);
  verify->add_option("--max-z", v_z)->check(CLI::NonNegativeNumber);
  verify->add_option("--bound", v_bound, "M for bounded-p0");
  verify->add_flag("--perturb", v_perturb, "add N_1 to the linear form (negative control)");
  verify->add_option("--json", v_json, "report path, '-' for stdout");
  verify->add_option("--csv", v_csv, "report path, '-' for stdout");

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "count admissible partitions");
  DiagramArgs e_diag;
  e_diag.add_to(enumerate);
  int e_weight = 0;
  std::optional<int> e_max_part, e_max_parts;
  std::string e_format = "csv";
  bool e_list = false, e_totals = false;
  enumerate->add_option("--max-weight", e_weight)->required()->check(CLI::NonNegativeNumber);
  enumerate->add_option("--max-part", e_max_part);
  enumerate->add_option("--max-parts", e_max_parts);
  enumerate->add_option("--format", e_format)->check(CLI::IsMember({"csv", "json"}));
  enumerate->add_flag("--list", e_list, "also print each partition as a JSON line");
  enumerate->add_flag("--totals", e_totals, "print counts by weight only");

  // series
  auto* series = app.add_subcommand("series", "expand a generating function");
  std::string s_family, s_format = "csv";
  int s_ell = 0, s_weight = 0;
  std::optional<int> s_index, s_z, s_bound;
  series->add_option("--family", s_family, "main|star|starstar|ag|bressoud|bounded-p0")->required();
  series->add_option("--ell", s_ell)->required()->check(CLI::PositiveNumber);
  auto* si = series->add_option("--i", s_index);
  series->add_option("--a", s_index)->excludes(si);
  series->add_option("--max-weight", s_weight)->required()->check(CLI::NonNegativeNumber);
  series->add_option("--max-z", s_z)->check(CLI::NonNegativeNumber);
  series->add_option("--bound", s_bound);
  series->add_option("--format", s_format)->check(CLI::IsMember({"csv", "json"}));

  // heights
  auto* heights = app.add_subcommand("heights", "relative heights of a partition");
  DiagramArgs h_diag;
  h_diag.add_to(heights);
  std::string h_parts;
  bool h_trace = false;
  heights->add_option("--parts", h_parts, "magnitude:absolute_height,...")->required();
  heights->add_flag("--trace", h_trace, "include the fold trace");

  // decompose
  auto* decompose = app.add_subcommand("decompose", "retreat a partition to (base, vector partition)");
  DiagramArgs d_diag;
  d_diag.add_to(decompose);
  std::string d_parts;
  decompose->add_option("--parts", d_parts, "magnitude:absolute_height,...")->required();

  // base
  auto* base = app.add_subcommand("base", "base partition of a height profile");
  DiagramArgs b_diag;
  b_diag.add_to(base);
  std::string b_profile;
  base->add_option("--profile", b_profile, "n_1,...,n_l")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) {
      std::string index = v_index;
      if (v_a) index = std::to_string(*v_a);
      if (index.empty()) index = "0";
      return run_verify(v_family, v_ell, index, v_weight, v_z, v_bound, v_perturb, v_json, v_csv);
    }

    if (*enumerate) {
      const auto cfg = e_diag.config();
      std::function<void(const cmpp::CmppPartition&)> sink;
      if (e_list) sink = [](const cmpp::CmppPartition& p) { std::cout << cmpp::io::to_json(p).dump() << '\n'; };
      const auto t = cmpp::enumerate_admissible(cfg, {e_weight, e_max_part, e_max_parts}, sink);
      if (e_totals) {
        if (e_format == "json") {
          json a = json::array();
          for (int n = 0; n <= e_weight; ++n) a.push_back({{"n", n}, {"count", std::to_string(t.total(n))}});
          std::cout << a.dump() << '\n';
        } else {
          std::cout << "n,count\n";
          for (int n = 0; n <= e_weight; ++n) std::cout << n << ',' << t.total(n) << '\n';
        }
      } else if (e_format == "json") {
        std::cout << cmpp::io::to_json(t).dump() << '\n';
      } else {
        std::cout << cmpp::io::to_csv(t);
      }
      return 0;
    }

    if (*series) {
      const int Z = s_z.value_or(s_weight);
      cmpp::BivariateSeries s(0, 0);
      if (s_family == "bounded-p0") {
        if (!s_bound) throw cmpp::usage_error("bounded-p0 needs --bound");
        s = cmpp::bounded_p0_series(s_ell, *s_bound, s_weight, Z);
      } else {
        const auto f = cmpp::parse_family(s_family);
        if (!f) throw cmpp::usage_error("unknown family '" + s_family + "'");
        if (!s_index) throw cmpp::usage_error("--i or --a is required");
        s = cmpp::series_for_family(*f, s_ell, *s_index, s_weight, Z);
      }
      if (s_format == "json")
        std::cout << cmpp::io::to_json(s).dump() << '\n';
      else
        std::cout << s.to_csv();
      return 0;
    }

    if (*heights) {
      const cmpp::CmppPartition p(h_diag.config(), cmpp::io::parse_parts(h_parts));
      cmpp::FoldTrace trace;
      const auto a = cmpp::relative_heights(p, h_trace ? &trace : nullptr);
      std::cout << cmpp::io::heights_json(p, a, h_trace ? &trace : nullptr).dump() << '\n';
      return 0;
    }

    if (*decompose) {
      const cmpp::CmppPartition p(d_diag.config(), cmpp::io::parse_parts(d_parts));
      const auto d = cmpp::retreat(p);
      const auto i = p.config().single_index();
      const bool weight_ok =
          d.base.weight() == cmpp::base_weight(cmpp::family_of(p.config().variant()), p.config().ell(), *i, d.profile);
      const bool round_trip = cmpp::advance(d.base, d.vector) == p;
      json out = {{"profile", cmpp::io::to_json(d.profile)},
                  {"base", cmpp::io::parts_json(d.base.parts())},
                  {"vector", cmpp::io::to_json(d.vector)},
                  {"weight_check", weight_ok && round_trip}};
      std::cout << out.dump() << '\n';
      return 0;
    }

    if (*base) {
      const auto cfg = b_diag.config();
      const auto i = cfg.single_index();
      if (!i) throw cmpp::domain_error("base partitions need k = 1");
      const cmpp::HeightProfile profile(cmpp::io::parse_int_list(b_profile));
      const auto b = cmpp::base_partition(cfg, profile);
      json out = cmpp::io::to_json(b);
      out["weight"] = b.weight();
      std::cout << out.dump() << '\n';
      return 0;
    }
  } catch (const cmpp::invariant_violation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
