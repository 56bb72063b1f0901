// Command-line front end: construct catalog actions, classify permutation
// groups, decide special pairs, verify the built-in catalog, and check
// partial linear spaces.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "plinth/catalog.hpp"
#include "plinth/classify.hpp"
#include "plinth/corpus.hpp"
#include "plinth/io.hpp"

using nlohmann::json;
using namespace plinth;

namespace {

std::string default_data_dir() {
  if (const char* env = std::getenv("PLINTH_DATA_DIR")) return env;
  return "data";
}

json pit_record(const Group& g) {
  json rec;
  rec["degree"] = g.degree();
  rec["order"] = g.order();
  if (!g.is_transitive()) {
    rec["kind"] = "intransitive";
    return rec;
  }
  PitResult pit = detect_pit(g);
  rec["plinth_order"] = pit.plinth_order;
  switch (pit.kind) {
    case PitKind::none:
      rec["kind"] = "no-transitive-minimal-normal";
      break;
    case PitKind::abelian_plinth:
      rec["kind"] = "innately-transitive-abelian-plinth";
      rec["note"] = "abelian plinth: outside the classification scope";
      break;
    case PitKind::quasiprimitive:
      rec["kind"] = "quasiprimitive";
      rec["rank"] = g.rank();
      break;
    case PitKind::proper: {
      const PitDecomposition& d = *pit.decomp;
      rec["kind"] = "properly-innately-transitive";
      rec["r"] = d.r;
      rec["sigma_count"] = d.sigma.cell_count();
      rec["rank"] = g.rank();
      PhiHat ph = phi_hat(d);
      SpecialPairVerdict sp = is_special_pair(ph.quotient, ph.r_sigma, ph.sigma);
      rec["special"] = sp.holds;
      rec["quotient_order"] = d.quotient.order();
      rec["quotient_rank"] = d.quotient.is_transitive() ? d.quotient.rank() : 0;
      break;
    }
  }
  return rec;
}

json group_report_record(const std::string& entry_id, const GroupReport& g) {
  json rec;
  rec["entry"] = entry_id;
  rec["row"] = g.row_id;
  rec["degree"] = g.degree;
  rec["order"] = g.order;
  rec["r"] = g.r;
  rec["sigma_count"] = g.sigma_count;
  rec["rank"] = g.rank;
  rec["special"] = g.special;
  rec["plinth_order"] = g.plinth_order;
  rec["quotient_signature"] = g.sigma_name;
  rec["line_tag"] = g.line_tag;
  rec["pass"] = g.matched && g.checks_passed;
  return rec;
}

int cmd_construct(const std::string& id, const std::string& data_dir, bool dump_gens,
                  bool dump_domain) {
  for (const CatalogEntry& e : builtin_catalog()) {
    if (e.id != id) continue;
    BuiltEntry built = e.build(data_dir);
    if (dump_gens) {
      if (!built.generator_dump.empty())
        std::fputs(built.generator_dump.c_str(), stdout);
      else
        std::fputs(format_group_text(built.m).c_str(), stdout);
      return 0;
    }
    if (dump_domain) {
      for (Pt p = 0; p < built.labels.size(); ++p)
        std::printf("%u %s\n", p, built.labels[p].c_str());
      return 0;
    }
    json rec;
    rec["entry"] = e.id;
    rec["degree"] = built.m.degree();
    rec["domain"] = built.domain_kind;
    rec["plinth_order"] = built.m.order();
    rec["normalizer_order"] = built.n.order();
    std::printf("%s\n", rec.dump().c_str());
    return 0;
  }
  std::fprintf(stderr, "unknown entry id: %s\n", id.c_str());
  return 2;
}

int cmd_classify(const std::string& path) {
  Group g = load_group_file(path);
  json rec = pit_record(g);
  rec["file"] = path;
  std::printf("%s\n", rec.dump().c_str());
  return 0;
}

int cmd_special_pair(const Table1Instance& inst, bool scan) {
  json rec;
  rec["line"] = inst.line;
  rec["r"] = inst.r;
  bool special = table1_predicate(inst);
  rec["special"] = special;
  if (scan) {
    // Construct the 2-transitive group when the parameters are desk-scale and
    // compare the brute-force verdicts.
    std::optional<Group> x;
    try {
      if (inst.line == 1) {
        x = inst.full_sym ? corpus_detail::symmetric_group(5) : alternating_group(5);
      } else if (inst.line == 2 && inst.d >= 2) {
        std::uint64_t q = pow_u64(inst.q0, inst.a);
        std::uint64_t pts = 1;
        for (std::uint32_t i = 0; i < inst.d; ++i) pts *= q;
        if ((pts - 1) / (q - 1) <= 200) {
          Field f = FiniteField::make(inst.q0, inst.a);
          std::vector<Semilinear> gens = as_semilinear(gl_generators(inst.d, f));
          if (inst.j < inst.a) gens.push_back(Semilinear(inst.j, Mat::identity(f, inst.d)));
          x = projective_action(inst.d, f, gens).image();
        }
      } else if (inst.line == 4 && inst.a * 2 <= 4) {
        Field f2 = FiniteField::make(inst.q0, 2 * inst.a);
        std::vector<Semilinear> gens = as_semilinear(su3_generators(f2));
        gens.push_back(Semilinear::linear(gu3_det_mover(f2)));
        if (inst.j < 2 * inst.a) gens.push_back(Semilinear(inst.j, Mat::identity(f2, 3)));
        x = scaled_isotropic_action(f2, 1, gens).image();
      } else if (inst.line == 5 && inst.d == 3) {
        QuadraticFormActions qf = quadratic_form_action(3);
        x = (inst.eps >= 0 ? qf.plus : qf.minus).image();
      } else if (inst.line == 7) {
        x = pgammal28_on_28();
      }
    } catch (const std::exception& ex) {
      rec["scan"] = std::string("error: ") + ex.what();
    }
    if (x) {
      int special_count = 0;
      for (auto& item : oracle_special_scan(*x))
        if (item.verdict.holds && item.quotient_order == inst.r) ++special_count;
      rec["scan_special_count"] = special_count;
      rec["scan_agrees"] = (special_count > 0) == special;
    } else if (!rec.contains("scan")) {
      rec["scan"] = "skipped (no desk-scale construction for these parameters)";
    }
  }
  std::printf("%s\n", rec.dump().c_str());
  if (scan && rec.contains("scan_agrees") && !rec["scan_agrees"].get<bool>()) return 1;
  return 0;
}

int cmd_catalog_verify(const std::string& data_dir, bool include_slow, bool timing) {
  CatalogReport rep = run_catalog(data_dir, include_slow);
  for (const EntryResult& e : rep.entries) {
    if (e.skipped) {
      json rec;
      rec["entry"] = e.entry_id;
      rec["skipped"] = true;
      rec["reason"] = e.error;
      std::printf("%s\n", rec.dump().c_str());
      continue;
    }
    for (const GroupReport& g : e.groups)
      std::printf("%s\n", group_report_record(e.entry_id, g).dump().c_str());
    if (!e.pass) {
      json rec;
      rec["entry"] = e.entry_id;
      rec["pass"] = false;
      rec["error"] = e.error;
      std::printf("%s\n", rec.dump().c_str());
    }
    if (timing) std::fprintf(stderr, "%-24s %.0f ms\n", e.entry_id.c_str(), e.wall_ms);
  }
  json sum;
  sum["rows_checked"] = rep.rows_checked;
  sum["rows_passed"] = rep.rows_passed;
  sum["entries_skipped"] = rep.skipped;
  sum["all_pass"] = rep.all_pass;
  std::printf("%s\n", sum.dump().c_str());
  return rep.all_pass ? 0 : 1;
}

int cmd_pls_verify(const std::string& design_path, const std::string& group_path) {
  DesignFile d = load_design_file(design_path);
  Group g = load_group_file(group_path);
  IncidenceStructure s{d.points, d.lines};
  PlsReport rep = verify_pls(s, g);
  json rec;
  rec["design"] = design_path;
  rec["group"] = group_path;
  rec["valid_partial_linear_space"] = rep.valid;
  if (!rep.valid) rec["violation"] = rep.violation;
  rec["line_size"] = rep.line_size;
  rec["replication"] = rep.replication;
  rec["group_order"] = g.order();
  rec["group_preserves_lines"] = rep.group_preserves;
  rec["rank"] = rep.rank;
  rec["orbitals_match_collinearity"] = rep.orbitals_match_collinearity;
  std::printf("%s\n", rec.dump().c_str());
  return (rep.valid && rep.group_preserves) ? 0 : 1;
}

int cmd_sweep(const std::string& data_dir) {
  // Candidate plinth actions reachable with the built-in constructors; for
  // each, normal subgroups of a point stabilizer give the coset degrees that
  // a properly innately transitive group could live on. Degrees 43..48 are
  // reported; the scan covers only these plinths and stabilizer-normal
  // subgroups, and asserts nothing beyond what it prints.
  struct Cand {
    std::string name;
    Group m;
  };
  std::vector<Cand> cands;
  cands.push_back({"A5 on 5", alternating_group(5)});
  cands.push_back({"A6 on 6", alternating_group(6)});
  cands.push_back({"A7 on 7", alternating_group(7)});
  for (unsigned k : {2u, 3u}) {
    cands.push_back({"A6 on " + std::to_string(k) + "-sets",
                     subset_action(alternating_group(6), k).image});
    cands.push_back({"A7 on " + std::to_string(k) + "-sets",
                     subset_action(alternating_group(7), k).image});
  }
  struct Q {
    std::uint32_t q0, a;
  };
  for (Q q : std::vector<Q>{{2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1},
                            {2, 4}, {17, 1}, {19, 1}, {23, 1}}) {
    Field f = FiniteField::make(q.q0, q.a);
    std::uint32_t qq = f->order();
    cands.push_back({"PSL(2," + std::to_string(qq) + ")",
                     projective_action(2, f, as_semilinear(sl_generators(2, f))).image()});
  }
  {
    Field f2 = FiniteField::make(2, 1);
    cands.push_back({"PSL(3,2)", projective_action(3, f2, as_semilinear(sl_generators(3, f2))).image()});
    Field f3 = FiniteField::make(3, 1);
    cands.push_back({"PSL(3,3)", projective_action(3, f3, as_semilinear(sl_generators(3, f3))).image()});
  }
  try {
    Group m11 = ingest_generators(data_dir + "/m11_11.perm", 7920);
    cands.push_back({"M11 on 11", m11});
    cands.push_back({"M11 on 12", m11_on_12(m11)});
  } catch (const data_file_missing_error&) {
  }
  unsigned found = 0;
  for (const Cand& c : cands) {
    Group stab = c.m.stabilizer(0);
    if (stab.order() > 10000) {
      json rec;
      rec["plinth"] = c.name;
      rec["note"] = "stabilizer too large for normal-subgroup enumeration; skipped";
      std::printf("%s\n", rec.dump().c_str());
      continue;
    }
    for (const Group& r : normal_subgroups_up_to_index(stab, stab.order())) {
      if (r.order() == stab.order()) continue;
      std::uint64_t deg = c.m.order() / std::max<std::uint64_t>(1, r.order());
      if (deg < 43 || deg > 48) continue;
      json rec;
      rec["plinth"] = c.name;
      rec["coset_degree"] = deg;
      rec["r_order"] = r.order();
      std::printf("%s\n", rec.dump().c_str());
      ++found;
    }
  }
  json sum;
  sum["candidate_plinths"] = cands.size();
  sum["degrees"] = "43..48";
  sum["hits"] = found;
  std::printf("%s\n", sum.dump().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"innately transitive permutation group toolkit"};
  app.require_subcommand(1);
  std::string data_dir = default_data_dir();

  auto* construct = app.add_subcommand("construct", "build a catalog action and summarize it");
  std::string entry_id;
  bool dump_gens = false, dump_domain = false;
  construct->add_option("entry", entry_id, "catalog entry id")->required();
  construct->add_flag("--dump-generators", dump_gens, "dump the plinth generators");
  construct->add_flag("--dump-domain", dump_domain, "dump the point labels");
  construct->add_option("--data-dir", data_dir, "generator data directory");

  auto* classify = app.add_subcommand("classify", "analyze a permutation group file");
  std::string group_path;
  classify->add_option("file", group_path, "permutation text file")->required();

  auto* special = app.add_subcommand("special-pair", "evaluate the classification-table conditions");
  std::string line_name;
  Table1Instance inst;
  bool do_scan = false;
  unsigned long long inst_r = 0;
  special->add_option("line", line_name, "line1..line10")->required();
  special->add_option("--d", inst.d, "dimension");
  special->add_option("--q0", inst.q0, "field characteristic");
  special->add_option("--a", inst.a, "extension degree");
  special->add_option("--r", inst_r, "prime quotient order")->required();
  special->add_option("--j", inst.j, "field-part datum j");
  special->add_option("--eps", inst.eps, "+1 or -1 (line 5)");
  special->add_flag("--full-sym", inst.full_sym, "line 1: the full symmetric group");
  special->add_flag("--scan", do_scan, "cross-check with the brute-force subgroup scan");

  auto* catalog = app.add_subcommand("catalog", "catalog operations");
  catalog->require_subcommand(1);
  auto* verify = catalog->add_subcommand("verify", "regenerate and verify every catalog row");
  bool include_slow = false, timing = false;
  verify->add_flag("--include-slow", include_slow, "include entries needing large data files");
  verify->add_flag("--timing", timing, "print per-entry timing to stderr");
  verify->add_option("--data-dir", data_dir, "generator data directory");
  auto* sweep = catalog->add_subcommand("sweep43to48", "scan candidate plinths for degrees 43..48");
  sweep->add_option("--data-dir", data_dir, "generator data directory");

  auto* pls = app.add_subcommand("pls", "partial linear space checks");
  pls->require_subcommand(1);
  auto* pls_verify_cmd = pls->add_subcommand("verify", "verify a design and a group acting on it");
  std::string design_path, pls_group_path;
  pls_verify_cmd->add_option("design", design_path, "design file")->required();
  pls_verify_cmd->add_option("group", pls_group_path, "permutation text file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage problems exit with 2
  }

  try {
    if (construct->parsed()) return cmd_construct(entry_id, data_dir, dump_gens, dump_domain);
    if (classify->parsed()) return cmd_classify(group_path);
    if (special->parsed()) {
      if (line_name.rfind("line", 0) != 0) {
        std::fprintf(stderr, "line must be line1..line10\n");
        return 2;
      }
      inst.line = std::atoi(line_name.c_str() + 4);
      inst.r = inst_r;
      return cmd_special_pair(inst, do_scan);
    }
    if (verify->parsed()) return cmd_catalog_verify(data_dir, include_slow, timing);
    if (sweep->parsed()) return cmd_sweep(data_dir);
    if (pls_verify_cmd->parsed()) return cmd_pls_verify(design_path, pls_group_path);
  } catch (const parse_error& ex) {
    std::fprintf(stderr, "parse error: %s\n", ex.what());
    return 2;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
  return 2;
}
