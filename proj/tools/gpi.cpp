#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gpi/gpi.hpp"
#include "gpi/io.hpp"

namespace {

using gpi::io::json;

constexpr const char* kSchemaVersion = "1";

struct Config {
  std::uint64_t seed = 0;
  int threads = 1;
  std::uint64_t closure_budget = 10000;
  std::uint64_t transporter_budget = 1000000;
  std::uint64_t h2_budget = 1000000;
  std::uint64_t brute_budget = 50000000;

  gpi::PipelineOptions pipeline(const std::string& functor = "layer") const {
    gpi::PipelineOptions o;
    o.act.closure_budget = closure_budget;
    o.act.transporter_budget = transporter_budget;
    o.act.seed = seed;
    o.h2_budget = h2_budget;
    o.brute_cap = brute_budget;
    o.functor = functor;
    return o;
  }
  json to_json() const {
    return json{{"seed", seed},
                {"threads", threads},
                {"budget", {{"closure", closure_budget},
                            {"transporter", transporter_budget},
                            {"h2", h2_budget},
                            {"brute", brute_budget}}}};
  }
};

json report(const std::string& cmd, const Config& cfg) {
  return json{{"schema", std::string("gpi.") + cmd + "/" + kSchemaVersion}, {"config", cfg.to_json()}};
}

gpi::FiniteGroup load_group_file(const std::string& path) { return gpi::io::group_from_json(gpi::io::read_json_file(path)); }

json pair_to_json(const gpi::Pair& x) { return json{{"alpha", gpi::io::matrix_to_json(x.alpha)}, {"beta", x.beta}}; }

std::string canonical_functor(const std::string& f) {
  if (f == "o-p-radical" || f == "o_p_radical" || f == "o_p_of_radical") return "o_p_of_radical";
  return f;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::string tok;
  std::stringstream ss(s);
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw gpi::InvalidInput("not an integer list: '" + s + "'");
    }
  }
  return out;
}

std::vector<gpi::Perm> aut_generators(const gpi::FiniteGroup& Q, const Config& cfg) {
  return gpi::brute_aut(Q, cfg.brute_budget).group.generators();
}

json iso_coset_json(const gpi::IsoCoset& C) {
  json j{{"isomorphic", !C.empty}};
  if (!C.empty) {
    j["witness"] = C.witness;
    j["aut_order"] = C.aut_order;
    j["aut_generators"] = C.aut_generators;
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isomorphism testing for finite groups given by Cayley tables"};
  app.require_subcommand(1);
  Config cfg;
  if (const char* env = std::getenv("GPI_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "GPI_SEED is not an unsigned integer\n";
      return 1;
    }
  }
  app.add_option("--seed", cfg.seed, "Seed for randomized steps (default: $GPI_SEED or 0)");
  app.add_option("--threads", cfg.threads, "Worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  app.add_option("--budget-closure,--closure-budget", cfg.closure_budget, "Cap on |Clo(S)|");
  app.add_option("--budget-transporter,--transporter-budget", cfg.transporter_budget, "Cap on transporter search nodes");
  app.add_option("--budget-h2", cfg.h2_budget, "Cap on |H^2|");
  app.add_option("--budget-brute", cfg.brute_budget, "Cap on brute-force search nodes");
  app.fallthrough();

  json out;
  std::function<void()> run;

  // make
  auto* make = app.add_subcommand("make", "Construct a group table");
  std::string family, out_path;
  std::vector<int> params;
  make->add_option("family", family, "cyclic|elem_ab|dihedral|semidihedral|quaternion|symmetric|alternating|dihedral_order")
      ->required();
  make->add_option("params", params, "Family parameters")->required();
  make->add_option("-o,--output", out_path, "Output group file");
  make->callback([&] {
    run = [&] {
      auto G = gpi::make_group(family, params);
      out = report("make", cfg);
      out["family"] = family;
      out["params"] = params;
      out["n"] = G.order();
      if (out_path.empty())
        out["group"] = gpi::io::group_to_json(G);
      else {
        gpi::io::write_json_file(out_path, gpi::io::group_to_json(G));
        out["written"] = out_path;
      }
    };
  });

  // iso
  auto* iso = app.add_subcommand("iso", "Decide isomorphism and return the isomorphism coset");
  std::string g_path, h_path, functor = "layer";
  bool use_brute = false;
  iso->add_option("group", g_path, "Group file")->required()->check(CLI::ExistingFile);
  iso->add_option("other", h_path, "Second group file")->required()->check(CLI::ExistingFile);
  iso->add_option("--functor", functor, "Outermost characteristic subgroup")
      ->check(CLI::IsMember({"layer", "center", "derived", "o-p-radical", "o_p_of_radical"}));
  iso->add_flag("--brute", use_brute, "Use the brute-force oracle instead of the pipeline");
  iso->callback([&] {
    run = [&] {
      auto G = load_group_file(g_path), H = load_group_file(h_path);
      out = report("iso", cfg);
      out["method"] = use_brute ? "brute" : "pipeline";
      if (use_brute) {
        out.update(iso_coset_json(gpi::brute_iso_coset(G, H, cfg.brute_budget)));
        return;
      }
      auto R = gpi::gpi_iso(G, H, cfg.pipeline(canonical_functor(functor)));
      out["functor"] = canonical_functor(functor);
      out.update(iso_coset_json(R.coset));
      json layers = json::array();
      for (const auto& L : R.layers) layers.push_back({{"p", L.p}, {"sylow_type", L.sylow_type}, {"tame", L.tame()}});
      out["layers"] = layers;
      if (!R.reason.empty()) out["reason"] = R.reason;
    };
  });

  // aut
  auto* aut = app.add_subcommand("aut", "Automorphism group");
  aut->add_option("group", g_path, "Group file")->required()->check(CLI::ExistingFile);
  aut->add_flag("--brute", use_brute, "Use the brute-force oracle");
  aut->callback([&] {
    run = [&] {
      auto G = load_group_file(g_path);
      out = report("aut", cfg);
      gpi::IsoCoset C = use_brute ? gpi::brute_iso_coset(G, G, cfg.brute_budget) : gpi::gpi_full(G, G, cfg.pipeline()).coset;
      if (C.empty) throw gpi::VerificationFailure("no automorphism found for G -> G");
      out["method"] = use_brute ? "brute" : "pipeline";
      out["order"] = C.aut_order;
      out["generators"] = C.aut_generators;
    };
  });

  // recognize
  auto* rec = app.add_subcommand("recognize", "Recognize cyclic/dihedral/semidihedral/quaternion 2-groups");
  rec->add_option("group", g_path, "Group file")->required()->check(CLI::ExistingFile);
  rec->callback([&] {
    run = [&] {
      auto T = gpi::recognize_tame_2group(load_group_file(g_path));
      out = report("recognize", cfg);
      out["family"] = T.name();
      if (T.kind != gpi::TameType::kNone) out["m"] = T.m;
      if (!T.reason.empty()) out["reason"] = T.reason;
    };
  });

  // sylow
  auto* syl = app.add_subcommand("sylow", "A Sylow p-subgroup and its tameness type");
  int prime = 0;
  syl->add_option("-p", prime, "Prime")->required();
  syl->add_option("group", g_path, "Group file")->required()->check(CLI::ExistingFile);
  syl->callback([&] {
    run = [&] {
      auto G = load_group_file(g_path);
      auto P = gpi::sylow_subgroup(G, prime);
      out = report("sylow", cfg);
      out["p"] = prime;
      out["order"] = P.size();
      out["elements"] = P.elements;
      out["type"] = gpi::tameness_report(G, prime).sylow_type;
    };
  });

  // radical
  auto* rad = app.add_subcommand("radical", "Solvable radical");
  rad->add_option("group", g_path, "Group file")->required()->check(CLI::ExistingFile);
  rad->callback([&] {
    run = [&] {
      auto R = gpi::solvable_radical(load_group_file(g_path));
      out = report("radical", cfg);
      out["order"] = R.size();
      out["elements"] = R.elements;
    };
  });

  // decompose
  auto* dec = app.add_subcommand("decompose", "Krull-Schmidt decomposition of a representation");
  std::string rep_path, rep2_path, group_path;
  dec->add_option("rep", rep_path)->required()->check(CLI::ExistingFile);
  dec->add_option("--group", group_path)->required()->check(CLI::ExistingFile);
  dec->callback([&] {
    run = [&] {
      auto grp = gpi::make_group_ref(load_group_file(group_path));
      auto R = gpi::io::rep_from_json(gpi::io::read_json_file(rep_path), grp);
      auto D = gpi::decompose_rep(R, cfg.seed);
      out = report("decompose", cfg);
      json s = json::array();
      for (const auto& x : D.summands)
        s.push_back({{"dim", x.rep.d}, {"multiplicity", x.multiplicity}, {"rep", gpi::io::rep_to_json(x.rep)}});
      out["summands"] = s;
      out["basis_change"] = gpi::io::matrix_to_json(D.C);
    };
  });

  // actcomp
  auto* act = app.add_subcommand("actcomp", "Pairs (alpha, beta) carrying one action to another");
  act->add_option("rep1", rep_path)->required()->check(CLI::ExistingFile);
  act->add_option("rep2", rep2_path)->required()->check(CLI::ExistingFile);
  act->add_option("--group", group_path)->required()->check(CLI::ExistingFile);
  act->callback([&] {
    run = [&] {
      auto Q = load_group_file(group_path);
      auto grp = gpi::make_group_ref(Q);
      auto theta = gpi::io::rep_from_json(gpi::io::read_json_file(rep_path), grp);
      auto eta = gpi::io::rep_from_json(gpi::io::read_json_file(rep2_path), grp);
      auto C = gpi::action_compatibility(theta, eta, aut_generators(Q, cfg), cfg.pipeline().act);
      out = report("actcomp", cfg);
      out["empty"] = C.empty;
      out["closure_size"] = C.closure.size();
      if (C.empty) {
        out["reason"] = C.reason;
        return;
      }
      out["representative"] = pair_to_json(C.representative);
      out["stabilizer_order"] = C.stabilizer_order;
      json g = json::array();
      for (const auto& x : C.generators) g.push_back(pair_to_json(x));
      out["stabilizer_generators"] = g;
    };
  });

  // h2
  auto* h2 = app.add_subcommand("h2", "Cohomology H^j(Q, M) for j = 0, 1, 2");
  int degree = 2;
  h2->add_option("--group", group_path)->required()->check(CLI::ExistingFile);
  h2->add_option("--rep", rep_path)->required()->check(CLI::ExistingFile);
  h2->add_option("-j", degree, "Degree")->check(CLI::Range(0, 2));
  h2->callback([&] {
    run = [&] {
      auto grp = gpi::make_group_ref(load_group_file(group_path));
      auto theta = gpi::io::rep_from_json(gpi::io::read_json_file(rep_path), grp);
      out = report("h2", cfg);
      out["j"] = degree;
      if (degree == 2) {
        gpi::CohomologySpace S(theta);
        out["dim"] = S.dim_h2();
        out["dim_z2"] = S.dim_z2();
        out["dim_b2"] = S.dim_b2();
        out["class_count"] = S.class_count(cfg.h2_budget);
        json reps = json::array();
        for (const auto& r : S.h2_reps) reps.push_back(gpi::io::cocycle_to_json(r));
        out["class_basis"] = reps;
      } else {
        out["dim"] = gpi::cohomology(theta, degree).dim;
      }
    };
  });

  // cciso
  auto* cc = app.add_subcommand("cciso", "Pairs in Stab(theta) carrying the class of f to the class of g");
  std::string f_path, g2_path;
  cc->add_option("--group", group_path)->required()->check(CLI::ExistingFile);
  cc->add_option("--rep", rep_path)->required()->check(CLI::ExistingFile);
  cc->add_option("f", f_path)->required()->check(CLI::ExistingFile);
  cc->add_option("g", g2_path)->required()->check(CLI::ExistingFile);
  cc->callback([&] {
    run = [&] {
      auto Q = load_group_file(group_path);
      auto grp = gpi::make_group_ref(Q);
      auto theta = gpi::io::rep_from_json(gpi::io::read_json_file(rep_path), grp);
      auto f = gpi::io::cocycle_from_json(gpi::io::read_json_file(f_path));
      auto g = gpi::io::cocycle_from_json(gpi::io::read_json_file(g2_path));
      auto stab = gpi::action_compatibility(theta, theta, aut_generators(Q, cfg), cfg.pipeline().act).generators;
      auto R = gpi::cciso(theta, gpi::normalize_cocycle(theta, f), gpi::normalize_cocycle(theta, g), stab, cfg.h2_budget);
      out = report("cciso", cfg);
      out["empty"] = R.empty;
      if (R.empty) return;
      out["representative"] = pair_to_json(R.representative);
      out["stabilizer_order"] = R.stabilizer_order;
      out["witness"] = R.witness.u;
    };
  });

  // extdata
  auto* ext = app.add_subcommand("extdata", "Extension data (theta, f) of G over an elementary abelian normal subgroup");
  std::string subgroup_text;
  ext->add_option("group", g_path, "Group file")->required()->check(CLI::ExistingFile);
  ext->add_option("--subgroup", subgroup_text, "Comma-separated elements")->required();
  ext->callback([&] {
    run = [&] {
      auto G = load_group_file(g_path);
      auto els = parse_int_list(subgroup_text);
      for (int x : els)
        if (x < 0 || x >= G.order()) throw gpi::InvalidInput("subgroup element out of range");
      auto X = gpi::extension_data(G, gpi::Subgroup::from_elements(G.order(), els));
      out = report("extdata", cfg);
      out["p"] = X.A.p;
      out["d"] = X.A.d;
      out["quotient"] = gpi::io::group_to_json(X.quotient.group);
      out["theta"] = gpi::io::rep_to_json(X.theta);
      out["cocycle"] = gpi::io::cocycle_to_json(X.f);
      out["section"] = X.section;
      out["basis"] = X.A.basis;
    };
  });

  // enum-sd
  auto* esd = app.add_subcommand("enum-sd", "Census of indecomposable modules for the semidihedral algebra");
  int ell = 1, max_dim = 4;
  esd->add_option("--ell", ell)->check(CLI::PositiveNumber);
  esd->add_option("--max-dim", max_dim)->check(CLI::Range(1, 10));
  esd->callback([&] {
    run = [&] {
      out = report("enum-sd", cfg);
      out["ell"] = ell;
      json dims = json::array();
      bool all_ok = true;
      for (int d = 1; d <= max_dim; ++d) {
        auto R = gpi::count_indecomposables(ell, d, cfg.seed);
        json classes = json::object();
        for (const auto& [c, n] : R.counts)
          classes[gpi::class_name(c)] = {{"count", n}, {"enumerated", R.enumerated.at(c)}, {"bound", static_cast<double>(R.bounds.at(c))}};
        const bool ok = R.within_bounds() && R.unexplained_duplicates == 0;
        all_ok = all_ok && ok;
        dims.push_back({{"d", d},
                        {"classes", classes},
                        {"duplicates", R.duplicates},
                        {"unexplained_duplicates", R.unexplained_duplicates},
                        {"pass", ok}});
      }
      out["dimensions"] = dims;
      out["pass"] = all_ok;
    };
  });

  // wild
  auto* wild = app.add_subcommand("wild", "Classes of (J_d(0), B) pairs under simultaneous conjugacy");
  int wp = 2, wd = 2;
  wild->add_option("--p", wp)->required();
  wild->add_option("--d", wd)->required()->check(CLI::PositiveNumber);
  wild->callback([&] {
    run = [&] {
      auto R = gpi::wild_family(wp, wd, cfg.seed);
      out = report("wild", cfg);
      out["p"] = R.p;
      out["d"] = R.d;
      out["pairs"] = R.pairs;
      out["classes"] = R.classes;
      out["lower_bound"] = R.lower_bound;
      out["pass"] = static_cast<std::uint64_t>(R.classes) >= R.lower_bound;
    };
  });

  // oracle
  auto* orc = app.add_subcommand("oracle", "Brute-force ground truth");
  orc->require_subcommand(1);
  auto* oiso = orc->add_subcommand("iso", "Exhaustive isomorphism search");
  oiso->add_option("group", g_path, "Group file")->required()->check(CLI::ExistingFile);
  oiso->add_option("other", h_path, "Second group file")->required()->check(CLI::ExistingFile);
  oiso->callback([&] {
    run = [&] {
      auto w = gpi::brute_iso(load_group_file(g_path), load_group_file(h_path), cfg.brute_budget);
      out = report("oracle.iso", cfg);
      out["isomorphic"] = w.has_value();
      if (w) out["witness"] = *w;
    };
  });
  auto* oaut = orc->add_subcommand("aut", "Exhaustive automorphism group");
  oaut->add_option("group", g_path, "Group file")->required()->check(CLI::ExistingFile);
  oaut->callback([&] {
    run = [&] {
      auto A = gpi::brute_aut(load_group_file(g_path), cfg.brute_budget);
      out = report("oracle.aut", cfg);
      out["order"] = A.order;
      out["generators"] = A.group.generators();
    };
  });
  auto* oind = orc->add_subcommand("indecomposable", "Exhaustive indecomposability test");
  oind->add_option("rep", rep_path)->required()->check(CLI::ExistingFile);
  oind->add_option("--group", group_path)->required()->check(CLI::ExistingFile);
  oind->callback([&] {
    run = [&] {
      auto grp = gpi::make_group_ref(load_group_file(group_path));
      auto R = gpi::io::rep_from_json(gpi::io::read_json_file(rep_path), grp);
      out = report("oracle.indecomposable", cfg);
      out["indecomposable"] = gpi::brute_indecomposable(R);
    };
  });
  auto* ocoh = orc->add_subcommand("cohomologous", "Exhaustive search for u with f - g = b_u");
  ocoh->add_option("--group", group_path)->required()->check(CLI::ExistingFile);
  ocoh->add_option("--rep", rep_path)->required()->check(CLI::ExistingFile);
  ocoh->add_option("f", f_path)->required()->check(CLI::ExistingFile);
  ocoh->add_option("g", g2_path)->required()->check(CLI::ExistingFile);
  ocoh->callback([&] {
    run = [&] {
      auto grp = gpi::make_group_ref(load_group_file(group_path));
      auto theta = gpi::io::rep_from_json(gpi::io::read_json_file(rep_path), grp);
      auto w = gpi::brute_cohomologous(theta, gpi::io::cocycle_from_json(gpi::io::read_json_file(f_path)),
                                       gpi::io::cocycle_from_json(gpi::io::read_json_file(g2_path)));
      out = report("oracle.cohomologous", cfg);
      out["cohomologous"] = w.has_value();
      if (w) out["witness"] = w->u;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  if (!run) return 0;
  try {
    run();
    std::cout << out.dump(2) << '\n';
    return 0;
  } catch (const gpi::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const gpi::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 2;
  } catch (const gpi::Undecided& e) {
    std::cerr << "undecided: " << e.what() << '\n';
    return 2;
  } catch (const gpi::VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return 3;
  }
}
