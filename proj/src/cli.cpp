#include "partcat/cli.hpp"

#include <algorithm>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "partcat/acceptance.hpp"
#include "partcat/category.hpp"
#include "partcat/diagram_ops.hpp"
#include "partcat/errors.hpp"
#include "partcat/presentations.hpp"
#include "partcat/report.hpp"
#include "partcat/sampling.hpp"
#include "partcat/tensor_op.hpp"
#include "partcat/weingarten.hpp"

namespace partcat {
namespace {

struct CommonOpts {
  std::string format = "json";
  std::string out;
  int workers = 1;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--format", c.format, "report format")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", c.out, "write the report to this file instead of stdout");
  cmd->add_option("--workers", c.workers, "worker threads; never affects output bytes")
      ->check(CLI::PositiveNumber);
}

nlohmann::json common_config(const CommonOpts& c) {
  return nlohmann::json{{"format", c.format}, {"out", c.out}, {"workers", c.workers}};
}

unsigned parse_classes(const std::vector<std::string>& names) {
  unsigned preds = 0;
  for (const std::string& name : names) {
    if (name == "even")
      preds |= PredEven;
    else if (name == "pairing")
      preds |= PredPairing;
    else if (name == "noncrossing")
      preds |= PredNoncrossing;
    else if (name == "matching")
      preds |= PredMatching;
    else if (name == "balanced")
      preds |= PredBalanced;
    else if (name == "alt-balanced" || name == "alt_balanced")
      preds |= PredAltBalanced;
    else
      throw UnknownName("unknown partition class: " + name);
  }
  return preds;
}

// preset name or snapshot file, exactly one; named presets are rebuilt from
// the predicate catalog at the requested bound
CategorySnapshot snapshot_for(const std::string& preset, const std::string& snapshot_file,
                              int bound) {
  if (!preset.empty() && !snapshot_file.empty())
    throw UnknownName("give either --preset or --snapshot, not both");
  if (!preset.empty()) return CategorySnapshot::named(preset_category(preset), bound);
  if (!snapshot_file.empty()) return CategorySnapshot::load(snapshot_file);
  throw UnknownName("a category is required: pass --preset or --snapshot");
}

GeneratorSet generators_for(const std::string& preset, const std::vector<std::string>& literals) {
  if (!preset.empty() && !literals.empty())
    throw UnknownName("give either --preset or --generator literals, not both");
  if (!preset.empty()) return preset_generators(preset);
  if (literals.empty())
    throw UnknownName("a generator set is required: pass --preset or --generator");
  GeneratorSet gens;
  for (const std::string& lit : literals) gens.generators.push_back(parse_partition(lit));
  return gens;
}

int finish(ReportBuilder& report, const CommonOpts& common, int code) {
  deliver_report(report.render(common.format), common.out);
  return code;
}

// ---------------------------------------------------------------------------

struct EnumerateOpts {
  CommonOpts common;
  std::string upper, lower;
  std::vector<std::string> classes;
  int cap = 12;
};

int run_enumerate(const EnumerateOpts& o) {
  nlohmann::json config = common_config(o.common);
  config["upper"] = o.upper;
  config["lower"] = o.lower;
  config["classes"] = o.classes;
  config["cap"] = o.cap;
  ReportBuilder report("enumerate", config);

  const ColorWord up = parse_color_word(o.upper);
  const ColorWord lo = parse_color_word(o.lower);
  const unsigned preds = parse_classes(o.classes);
  const std::vector<Partition> parts = enumerate(up, lo, preds, o.cap);

  nlohmann::json list = nlohmann::json::array();
  std::string text;
  for (const Partition& p : parts) {
    list.push_back(format_partition(p));
    text += format_partition(p) + "\n";
  }
  report.payload()["count"] = parts.size();
  report.payload()["partitions"] = std::move(list);
  report.set_text(text.empty() ? "(no partitions)\n" : text);
  return finish(report, o.common, 0);
}

struct ClosureOpts {
  CommonOpts common;
  std::string preset;
  std::vector<std::string> generators;
  int bound = 0;
  std::uint64_t max_cells = 0;
};

int run_closure(const ClosureOpts& o) {
  nlohmann::json config = common_config(o.common);
  config["preset"] = o.preset;
  config["generators"] = o.generators;
  config["bound"] = o.bound;
  config["max_cells"] = o.max_cells;
  ReportBuilder report("closure", config);

  const GeneratorSet gens = generators_for(o.preset, o.generators);
  const CategorySnapshot snap = CategorySnapshot::close(gens, o.bound, o.max_cells);
  report.payload() = nlohmann::json::parse(snap.to_json_string());
  report.payload()["cell_count"] = snap.cell_count();

  std::string text = "closure of " + snap.provenance() + " at bound " + std::to_string(o.bound) +
                     ": " + std::to_string(snap.cell_count()) + " cells\n";
  for (std::uint16_t key : snap.cells().nonempty_keys())
    text += "  " + (key % 16 ? format_color_word(word_of_key(key)) : std::string("(empty word)")) +
            ": " + std::to_string(snap.cells().bucket(key).size()) + "\n";
  report.set_text(std::move(text));
  return finish(report, o.common, 0);
}

struct MemberOpts {
  CommonOpts common;
  std::string literal;
  std::string preset, snapshot;
  int bound = 8;
};

int run_member(const MemberOpts& o) {
  nlohmann::json config = common_config(o.common);
  config["literal"] = o.literal;
  config["preset"] = o.preset;
  config["snapshot"] = o.snapshot;
  config["bound"] = o.bound;
  ReportBuilder report("member", config);

  const Partition p = parse_partition(o.literal);
  const CategorySnapshot snap = snapshot_for(o.preset, o.snapshot, o.bound);
  const bool member = snap.contains(p) == CategorySnapshot::Membership::Member;
  report.payload()["partition"] = format_partition(p);
  report.payload()["bound"] = snap.bound();
  report.payload()["membership"] = member ? "member" : "non-member-up-to-bound";
  report.set_text(format_partition(p) + (member ? " is a member\n" : " is not a member up to bound\n"));
  return finish(report, o.common, member ? 0 : 1);
}

struct AxiomOpts {
  CommonOpts common;
  std::string d_file, e_file;
  std::string preset;
  int bound = 8;
};

int run_check_axioms(const AxiomOpts& o) {
  nlohmann::json config = common_config(o.common);
  config["d"] = o.d_file;
  config["e"] = o.e_file;
  config["preset"] = o.preset;
  config["bound"] = o.bound;
  ReportBuilder report("check-axioms", config);

  PairAxiomReport axioms;
  if (!o.preset.empty()) {
    if (!o.d_file.empty() || !o.e_file.empty())
      throw UnknownName("give either --preset or snapshot files, not both");
    const CategorySnapshot d = CategorySnapshot::named(preset_category(o.preset), o.bound);
    const CategorySnapshot e =
        CategorySnapshot::named(preset_category(reflection_partner(o.preset)), o.bound);
    axioms = check_pair_axioms(d, e);
  } else {
    if (o.d_file.empty() || o.e_file.empty())
      throw UnknownName("check-axioms needs --d and --e snapshot files, or --preset");
    axioms = check_pair_axioms(CategorySnapshot::load(o.d_file), CategorySnapshot::load(o.e_file));
  }

  report.payload()["d_eq"] = axioms.d_eq;
  report.payload()["e_eq"] = axioms.e_eq;
  report.payload()["d_witnesses"] = axioms.d_witnesses;
  report.payload()["e_witnesses"] = axioms.e_witnesses;
  std::string text = std::string("pairing axiom: ") + (axioms.d_eq ? "holds" : "FAILS") +
                     "\njoin axiom: " + (axioms.e_eq ? "holds" : "FAILS") + "\n";
  for (const auto& w : axioms.d_witnesses) text += "  d witness " + w + "\n";
  for (const auto& w : axioms.e_witnesses) text += "  e witness " + w + "\n";
  report.set_text(std::move(text));
  return finish(report, o.common, axioms.d_eq && axioms.e_eq ? 0 : 1);
}

struct RealizeOpts {
  CommonOpts common;
  std::string literal;
  int N = 2;
  bool sign_weighted = false;
  std::uint64_t budget = kDefaultOperatorBudget;
};

int run_realize(const RealizeOpts& o) {
  nlohmann::json config = common_config(o.common);
  config["literal"] = o.literal;
  config["N"] = o.N;
  config["signed"] = o.sign_weighted;
  config["budget"] = o.budget;
  ReportBuilder report("realize", config);

  const Partition p = parse_partition(o.literal);
  const SparseIntegerOperator op =
      o.sign_weighted ? realize_twisted(p, o.N, o.budget) : realize(p, o.N, o.budget);
  report.payload() = nlohmann::json::parse(operator_to_json(op));
  report.set_text(operator_to_text(op));
  return finish(report, o.common, 0);
}

struct VerifyOpts {
  CommonOpts common;
  int max_legs = 2;
  int N = 2;
  std::vector<std::string> classes;
  std::uint64_t budget = kDefaultOperatorBudget;
};

int run_verify_categorical(const VerifyOpts& o) {
  nlohmann::json config = common_config(o.common);
  config["max_legs"] = o.max_legs;
  config["N"] = o.N;
  config["classes"] = o.classes;
  config["budget"] = o.budget;
  ReportBuilder report("verify-categorical", config);

  // the sign-weighted route needs even blocks, so the pool is always cut to
  // even partitions whatever extra classes are requested
  const unsigned preds = parse_classes(o.classes) | PredEven;
  std::vector<Partition> pool;
  for (int k = 0; k <= o.max_legs; ++k)
    for (int l = 0; l <= o.max_legs; ++l)
      for (const ColorWord& up : all_color_words(k))
        for (const ColorWord& lo : all_color_words(l)) {
          auto cells = enumerate(up, lo, preds);
          pool.insert(pool.end(), cells.begin(), cells.end());
        }
  const CategoricalReport rep = verify_categorical(pool, o.N, o.budget);

  report.payload()["pool"] = pool.size();
  report.payload()["checks"] = rep.checks;
  report.payload()["failures"] = rep.failures;
  report.payload()["ok"] = rep.all_ok();
  std::string text = "pool " + std::to_string(pool.size()) + ", " + std::to_string(rep.checks) +
                     " identity checks, " + std::to_string(rep.failures.size()) + " failures\n";
  for (const auto& f : rep.failures) text += "  " + f + "\n";
  report.set_text(std::move(text));
  return finish(report, o.common, rep.all_ok() ? 0 : 1);
}

struct GramOpts {
  CommonOpts common;
  std::string word;
  int N = 0;
  std::string preset, snapshot;
  bool check_brute = false;
};

int run_gram(const GramOpts& o) {
  nlohmann::json config = common_config(o.common);
  config["word"] = o.word;
  config["N"] = o.N;
  config["preset"] = o.preset;
  config["snapshot"] = o.snapshot;
  config["check_brute"] = o.check_brute;
  ReportBuilder report("gram", config);

  const ColorWord word = parse_color_word(o.word);
  std::vector<Partition> basis;
  if (o.preset.empty() && o.snapshot.empty()) {
    for (const SetPartition& sp : all_set_partitions(static_cast<int>(word.size())))
      basis.push_back(unflatten(Flattened{word, sp}, 0));
  } else {
    const CategorySnapshot snap =
        snapshot_for(o.preset, o.snapshot, static_cast<int>(word.size()));
    basis = snap.cell({}, word);
  }
  const auto gram = gram_matrix(basis, o.N);

  nlohmann::json lits = nlohmann::json::array();
  for (const Partition& p : basis) lits.push_back(format_partition(p));
  report.payload()["basis"] = std::move(lits);
  report.payload()["size"] = basis.size();
  report.payload()["gram"] = gram;

  int code = 0;
  if (o.check_brute) {
    const bool equal = gram == gram_matrix_brute(basis, o.N);
    report.payload()["brute_equal"] = equal;
    if (!equal) code = 1;
  }
  std::string text = "gram of " + std::to_string(basis.size()) + " one-row partitions on " +
                     (o.word.empty() ? "(empty word)" : o.word) + " at N=" + std::to_string(o.N) +
                     "\n";
  for (const auto& row : gram) {
    text += " ";
    for (long long v : row) text += " " + std::to_string(v);
    text += "\n";
  }
  report.set_text(std::move(text));
  return finish(report, o.common, code);
}

struct WeingartenOpts {
  CommonOpts common;
  std::string word;
  int N = 0;
  std::string preset, snapshot;
};

int run_weingarten(const WeingartenOpts& o) {
  nlohmann::json config = common_config(o.common);
  config["word"] = o.word;
  config["N"] = o.N;
  config["preset"] = o.preset;
  config["snapshot"] = o.snapshot;
  ReportBuilder report("weingarten", config);

  const ColorWord word = parse_color_word(o.word);
  const CategorySnapshot snap = snapshot_for(o.preset, o.snapshot, static_cast<int>(word.size()));
  const WeingartenTable table = weingarten_table(snap, word, o.N);
  report.payload() = nlohmann::json::parse(weingarten_to_json(table));
  report.set_text(weingarten_to_text(table));
  return finish(report, o.common, 0);
}

struct MomentOpts {
  CommonOpts common;
  std::string word;
  int N = 0;
  std::vector<int> rows, cols;
  std::string preset, snapshot;
};

int run_moment(const MomentOpts& o) {
  nlohmann::json config = common_config(o.common);
  config["word"] = o.word;
  config["N"] = o.N;
  config["rows"] = o.rows;
  config["cols"] = o.cols;
  config["preset"] = o.preset;
  config["snapshot"] = o.snapshot;
  ReportBuilder report("moment", config);

  const ColorWord word = parse_color_word(o.word);
  const MomentQuery q{word, o.rows, o.cols, o.N};
  Rational exact = 0;
  bool empty_basis = false;
  try {
    const CategorySnapshot snap =
        snapshot_for(o.preset, o.snapshot, static_cast<int>(word.size()));
    exact = moment(weingarten_table(snap, word, o.N), q);
  } catch (const EmptyBasis&) {
    // no invariants on this word, so the Haar integral vanishes
    empty_basis = true;
  }
  report.payload()["moment"] = rational_to_string(exact);
  report.payload()["moment_double"] = exact.convert_to<double>();
  report.payload()["empty_basis"] = empty_basis;
  report.set_text("moment = " + rational_to_string(exact) +
                  (empty_basis ? " (empty invariant basis)\n" : "\n"));
  return finish(report, o.common, 0);
}

struct McMomentOpts {
  CommonOpts common;
  std::string group;
  std::string word;
  int N = 0;
  std::vector<int> rows, cols;
  std::uint64_t samples = 200000;
  std::uint64_t seed = 1;
};

int run_mc_moment(const McMomentOpts& o) {
  nlohmann::json config = common_config(o.common);
  config["group"] = o.group;
  config["word"] = o.word;
  config["N"] = o.N;
  config["rows"] = o.rows;
  config["cols"] = o.cols;
  config["samples"] = o.samples;
  config["seed"] = o.seed;
  ReportBuilder report("mc-moment", config);

  const MomentQuery q{parse_color_word(o.word), o.rows, o.cols, o.N};
  const McEstimate est = mc_moment(parse_classical_group(o.group), q, o.samples, o.seed);
  report.payload()["estimate"] = est.estimate;
  report.payload()["stderr"] = est.stderr_of_mean;
  report.payload()["samples"] = est.samples;
  report.payload()["seed"] = est.seed;
  report.set_text("estimate = " + std::to_string(est.estimate) + " +- " +
                  std::to_string(est.stderr_of_mean) + " (" + std::to_string(est.samples) +
                  " samples)\n");
  return finish(report, o.common, 0);
}

struct EmitOpts {
  CommonOpts common;
  std::string what;
  std::string preset, snapshot;
  int N = 0;
  int bound = 0;
  bool sign_weighted = false;
  bool normalize = false;
  std::uint64_t budget = kDefaultOperatorBudget;
};

int run_emit(const EmitOpts& o) {
  nlohmann::json config = common_config(o.common);
  config["what"] = o.what;
  config["preset"] = o.preset;
  config["snapshot"] = o.snapshot;
  config["N"] = o.N;
  config["bound"] = o.bound;
  config["signed"] = o.sign_weighted;
  config["normalize"] = o.normalize;
  config["budget"] = o.budget;
  ReportBuilder report("emit", config);

  const CategorySnapshot snap = snapshot_for(o.preset, o.snapshot, o.bound);
  if (o.what == "torus") {
    const TorusPresentation t = torus_presentation(snap, o.N, o.bound, o.sign_weighted);
    report.payload() = nlohmann::json::parse(torus_to_json(t));
    std::string text = torus_to_text(t);
    if (o.normalize) {
      const TorusNormalForm nf = normalize_torus(t);
      report.payload()["normal_form"] = {{"kind", torus_kind_name(nf.kind)},
                                         {"commutation", nf.commutation},
                                         {"squares", nf.squares},
                                         {"half_commutation", nf.half_commutation},
                                         {"patterns", nf.patterns}};
      text += "normal form: " + torus_kind_name(nf.kind) + "\n";
    }
    report.set_text(std::move(text));
  } else if (o.what == "sphere") {
    const SphereRelationSet s = sphere_relations(snap, o.N, o.bound, o.sign_weighted);
    report.payload() = nlohmann::json::parse(sphere_to_json(s));
    report.set_text(sphere_to_text(s));
  } else if (o.what == "sphere-two-row") {
    const SphereRelationSet s = sphere_relations_two_row(snap, o.N, o.bound, o.sign_weighted);
    report.payload() = nlohmann::json::parse(sphere_to_json(s));
    report.set_text(sphere_to_text(s));
  } else if (o.what == "group") {
    const IntertwinerRelationSet s =
        group_relations(snap, o.N, o.bound, o.sign_weighted, o.budget);
    report.payload() = nlohmann::json::parse(intertwiners_to_json(s));
    report.set_text(intertwiners_to_text(s));
  } else {
    throw UnknownName("unknown emission target: " + o.what);
  }
  return finish(report, o.common, 0);
}

struct FizzyOpts {
  CommonOpts common;
  std::string preset;
  std::vector<std::string> generators;
};

int run_fizzy(const FizzyOpts& o) {
  nlohmann::json config = common_config(o.common);
  config["preset"] = o.preset;
  config["generators"] = o.generators;
  ReportBuilder report("fizzy", config);

  const GeneratorSet gens = generators_for(o.preset, o.generators);
  const FizzyReport rep = fizzy_criterion(gens);
  const bool fizzy = rep.verdict == FizzyVerdict::FizzyByPermutations;
  report.payload()["label"] = rep.label;
  report.payload()["verdict"] = fizzy ? "fizzy-by-permutations" : "inconclusive";
  report.payload()["non_permutation_generators"] = rep.non_permutation_generators;
  std::string text = rep.label + ": " + (fizzy ? "fizzy by permutations\n" : "inconclusive\n");
  for (const auto& g : rep.non_permutation_generators) text += "  non-permutation " + g + "\n";
  report.set_text(std::move(text));
  return finish(report, o.common, fizzy ? 0 : 1);
}

struct ModelCheckOpts {
  CommonOpts common;
  std::string preset, snapshot;
  std::string model;
  int N = 0;
  int bound = 6;
  std::uint64_t samples = 1000;
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  long long corrupt = -1;
};

int run_model_check(const ModelCheckOpts& o) {
  nlohmann::json config = common_config(o.common);
  config["preset"] = o.preset;
  config["snapshot"] = o.snapshot;
  config["model"] = o.model;
  config["N"] = o.N;
  config["bound"] = o.bound;
  config["samples"] = o.samples;
  config["tolerance"] = o.tolerance;
  config["seed"] = o.seed;
  config["corrupt"] = o.corrupt;
  ReportBuilder report("model-check", config);

  std::string model = o.model;
  if (model.empty()) {
    if (o.preset.empty())
      throw UnknownName("pass --model explicitly when checking a snapshot file");
    model = classical_model_for_preset(o.preset);
  }
  const CategorySnapshot snap = snapshot_for(o.preset, o.snapshot, o.bound);
  const SphereRelationSet rels = sphere_relations(snap, o.N, o.bound, false);
  const ModelCheckReport rep =
      classical_model_check(rels, model, o.samples, o.tolerance, o.seed, o.corrupt);

  report.payload()["model"] = rep.model;
  report.payload()["N"] = rep.N;
  report.payload()["samples"] = rep.samples;
  report.payload()["tolerance"] = rep.tolerance;
  report.payload()["relations"] = rep.relations;
  report.payload()["max_deviation"] = rep.max_deviation;
  report.payload()["worst_relation"] = rep.worst_relation;
  report.payload()["pass"] = rep.pass;
  report.set_text("model " + rep.model + ": " + (rep.pass ? "pass" : "FAIL") +
                  ", max deviation " + std::to_string(rep.max_deviation) + " over " +
                  std::to_string(rep.relations) + " relations\n");
  return finish(report, o.common, rep.pass ? 0 : 1);
}

struct SuiteOpts {
  CommonOpts common;
  std::string name;
  std::uint64_t seed = 42;
};

int run_suite(const SuiteOpts& o) {
  nlohmann::json config = common_config(o.common);
  config["name"] = o.name;
  config["seed"] = o.seed;
  ReportBuilder report("suite", config);

  if (o.name != "acceptance") throw UnknownName("unknown suite: " + o.name);
  const AcceptanceReport rep = run_acceptance(o.seed, &std::cerr);

  // progress timing goes to stderr; the report itself stays a pure function
  // of argv and seed, so the per-criterion wall clocks are dropped here
  nlohmann::json doc = nlohmann::json::parse(acceptance_to_json(rep));
  std::string text;
  for (auto& c : doc["criteria"]) {
    c.erase("ms");
    text += std::string(c["pass"].get<bool>() ? "PASS" : "FAIL") + " " +
            c["name"].get<std::string>() + ": " + c["detail"].get<std::string>() + "\n";
  }
  report.payload() = std::move(doc);
  report.set_text(std::move(text));
  return finish(report, o.common, rep.all_pass() ? 0 : 1);
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"colored set partition categories, tensor realizations, and exact integration"};
  app.require_subcommand(1);

  auto enumerate_opts = std::make_shared<EnumerateOpts>();
  auto closure_opts = std::make_shared<ClosureOpts>();
  auto member_opts = std::make_shared<MemberOpts>();
  auto axiom_opts = std::make_shared<AxiomOpts>();
  auto realize_opts = std::make_shared<RealizeOpts>();
  auto verify_opts = std::make_shared<VerifyOpts>();
  auto gram_opts = std::make_shared<GramOpts>();
  auto weingarten_opts = std::make_shared<WeingartenOpts>();
  auto moment_opts = std::make_shared<MomentOpts>();
  auto mc_opts = std::make_shared<McMomentOpts>();
  auto emit_opts = std::make_shared<EmitOpts>();
  auto fizzy_opts = std::make_shared<FizzyOpts>();
  auto model_opts = std::make_shared<ModelCheckOpts>();
  auto suite_opts = std::make_shared<SuiteOpts>();
  int code = 0;

  {
    auto* cmd = app.add_subcommand("enumerate", "list partitions on a word pair by class");
    cmd->add_option("--upper", enumerate_opts->upper, "upper color word, o and b letters");
    cmd->add_option("--lower", enumerate_opts->lower, "lower color word");
    cmd->add_option("--class", enumerate_opts->classes, "partition classes to intersect")
        ->delimiter(',');
    cmd->add_option("--cap", enumerate_opts->cap, "maximum total legs");
    add_common(cmd, enumerate_opts->common);
    cmd->callback([&code, enumerate_opts] { code = run_enumerate(*enumerate_opts); });
  }
  {
    auto* cmd = app.add_subcommand("closure", "generate a category snapshot up to a bound");
    cmd->add_option("--preset", closure_opts->preset, "geometry preset name");
    cmd->add_option("--generator", closure_opts->generators, "generator partition literal")
        ->take_all();
    cmd->add_option("--bound", closure_opts->bound, "leg bound of the snapshot")->required();
    cmd->add_option("--max-cells", closure_opts->max_cells, "refuse beyond this many cells");
    add_common(cmd, closure_opts->common);
    cmd->callback([&code, closure_opts] { code = run_closure(*closure_opts); });
  }
  {
    auto* cmd = app.add_subcommand("member", "test one partition against a category");
    cmd->add_option("--literal", member_opts->literal, "partition literal")->required();
    cmd->add_option("--preset", member_opts->preset, "geometry preset name");
    cmd->add_option("--snapshot", member_opts->snapshot, "snapshot file");
    cmd->add_option("--bound", member_opts->bound, "bound for preset categories");
    add_common(cmd, member_opts->common);
    cmd->callback([&code, member_opts] { code = run_member(*member_opts); });
  }
  {
    auto* cmd = app.add_subcommand("check-axioms", "pairing and join axioms for a category pair");
    cmd->add_option("--d", axiom_opts->d_file, "pairing-side snapshot file");
    cmd->add_option("--e", axiom_opts->e_file, "even-side snapshot file");
    cmd->add_option("--preset", axiom_opts->preset, "geometry preset; partner derived");
    cmd->add_option("--bound", axiom_opts->bound, "bound for preset categories");
    add_common(cmd, axiom_opts->common);
    cmd->callback([&code, axiom_opts] { code = run_check_axioms(*axiom_opts); });
  }
  {
    auto* cmd = app.add_subcommand("realize", "tensor operator of one partition");
    cmd->add_option("--literal", realize_opts->literal, "partition literal")->required();
    cmd->add_option("--N", realize_opts->N, "dimension")->required();
    cmd->add_flag("--signed", realize_opts->sign_weighted, "sign-weighted realization");
    cmd->add_option("--budget", realize_opts->budget, "entry budget");
    add_common(cmd, realize_opts->common);
    cmd->callback([&code, realize_opts] { code = run_realize(*realize_opts); });
  }
  {
    auto* cmd = app.add_subcommand("verify-categorical",
                                   "tensor, composition, and adjoint identities over a pool");
    cmd->add_option("--max-legs", verify_opts->max_legs, "legs per row of the pool");
    cmd->add_option("--N", verify_opts->N, "dimension")->required();
    cmd->add_option("--class", verify_opts->classes, "extra pool classes; even is always on")
        ->delimiter(',');
    cmd->add_option("--budget", verify_opts->budget, "entry budget");
    add_common(cmd, verify_opts->common);
    cmd->callback([&code, verify_opts] { code = run_verify_categorical(*verify_opts); });
  }
  {
    auto* cmd = app.add_subcommand("gram", "gram matrix of a one-row basis");
    cmd->add_option("--word", gram_opts->word, "color word of the basis")->required();
    cmd->add_option("--N", gram_opts->N, "dimension")->required();
    cmd->add_option("--preset", gram_opts->preset, "restrict the basis to this preset's cells");
    cmd->add_option("--snapshot", gram_opts->snapshot, "restrict the basis to a snapshot's cells");
    cmd->add_flag("--check-brute", gram_opts->check_brute,
                  "also run the brute-force sums and compare");
    add_common(cmd, gram_opts->common);
    cmd->callback([&code, gram_opts] { code = run_gram(*gram_opts); });
  }
  {
    auto* cmd = app.add_subcommand("weingarten", "exact integration table for one word");
    cmd->add_option("--word", weingarten_opts->word, "exponent color word")->required();
    cmd->add_option("--N", weingarten_opts->N, "dimension")->required();
    cmd->add_option("--preset", weingarten_opts->preset, "geometry preset name");
    cmd->add_option("--snapshot", weingarten_opts->snapshot, "snapshot file");
    add_common(cmd, weingarten_opts->common);
    cmd->callback([&code, weingarten_opts] { code = run_weingarten(*weingarten_opts); });
  }
  {
    auto* cmd = app.add_subcommand("moment", "exact Haar moment of one matrix monomial");
    cmd->add_option("--word", moment_opts->word, "exponent color word")->required();
    cmd->add_option("--N", moment_opts->N, "dimension")->required();
    cmd->add_option("--rows", moment_opts->rows, "row indices, comma separated")
        ->delimiter(',')
        ->required();
    cmd->add_option("--cols", moment_opts->cols, "column indices, comma separated")
        ->delimiter(',')
        ->required();
    cmd->add_option("--preset", moment_opts->preset, "geometry preset name");
    cmd->add_option("--snapshot", moment_opts->snapshot, "snapshot file");
    add_common(cmd, moment_opts->common);
    cmd->callback([&code, moment_opts] { code = run_moment(*moment_opts); });
  }
  {
    auto* cmd = app.add_subcommand("mc-moment", "Monte-Carlo moment on a classical group");
    cmd->add_option("--group", mc_opts->group, "classical group: O, U, H, or K")->required();
    cmd->add_option("--word", mc_opts->word, "exponent color word")->required();
    cmd->add_option("--N", mc_opts->N, "dimension")->required();
    cmd->add_option("--rows", mc_opts->rows, "row indices")->delimiter(',')->required();
    cmd->add_option("--cols", mc_opts->cols, "column indices")->delimiter(',')->required();
    cmd->add_option("--samples", mc_opts->samples, "sample count");
    cmd->add_option("--seed", mc_opts->seed, "sampler seed");
    add_common(cmd, mc_opts->common);
    cmd->callback([&code, mc_opts] { code = run_mc_moment(*mc_opts); });
  }
  {
    auto* cmd = app.add_subcommand("emit", "presentation relation sets as files");
    cmd->add_option("--what", emit_opts->what, "torus, sphere, sphere-two-row, or group")
        ->required();
    cmd->add_option("--preset", emit_opts->preset, "geometry preset name");
    cmd->add_option("--snapshot", emit_opts->snapshot, "snapshot file");
    cmd->add_option("--N", emit_opts->N, "number of generators or coordinates")->required();
    cmd->add_option("--bound", emit_opts->bound, "cell bound to draw relations from")->required();
    cmd->add_flag("--signed", emit_opts->sign_weighted, "signature-weighted route");
    cmd->add_flag("--normalize", emit_opts->normalize, "attach the torus normal form");
    cmd->add_option("--budget", emit_opts->budget, "entry budget for group relations");
    add_common(cmd, emit_opts->common);
    cmd->callback([&code, emit_opts] { code = run_emit(*emit_opts); });
  }
  {
    auto* cmd = app.add_subcommand("fizzy", "permutation-generator criterion for a generator set");
    cmd->add_option("--preset", fizzy_opts->preset, "geometry preset name");
    cmd->add_option("--generator", fizzy_opts->generators, "generator partition literal")
        ->take_all();
    add_common(cmd, fizzy_opts->common);
    cmd->callback([&code, fizzy_opts] { code = run_fizzy(*fizzy_opts); });
  }
  {
    auto* cmd = app.add_subcommand("model-check", "numeric sum-relation check on a classical model");
    cmd->add_option("--preset", model_opts->preset, "geometry preset name");
    cmd->add_option("--snapshot", model_opts->snapshot, "snapshot file");
    cmd->add_option("--model", model_opts->model, "real_sphere or complex_sphere");
    cmd->add_option("--N", model_opts->N, "coordinates")->required();
    cmd->add_option("--bound", model_opts->bound, "relation bound");
    cmd->add_option("--samples", model_opts->samples, "sampled points");
    cmd->add_option("--tolerance", model_opts->tolerance, "max allowed deviation");
    cmd->add_option("--seed", model_opts->seed, "sampler seed");
    cmd->add_option("--corrupt", model_opts->corrupt,
                    "flip one summand's sign to prove the check can fail");
    add_common(cmd, model_opts->common);
    cmd->callback([&code, model_opts] { code = run_model_check(*model_opts); });
  }
  {
    auto* cmd = app.add_subcommand("suite", "run a named battery");
    cmd->add_option("--name", suite_opts->name, "battery name")->required();
    cmd->add_option("--seed", suite_opts->seed, "battery seed");
    add_common(cmd, suite_opts->common);
    cmd->callback([&code, suite_opts] { code = run_suite(*suite_opts); });
  }

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("partcat");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error at line 1, column " << (e.position + 1) << ": " << e.what()
              << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget refused: " << e.what() << "\n";
    return 3;
  } catch (const CapExceeded& e) {
    std::cerr << "budget refused: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}

}  // namespace partcat
