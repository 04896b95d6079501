#include "symwave/pipeline.hpp"

#include "symwave/dualmask.hpp"
#include "symwave/framelike.hpp"
#include "symwave/frames.hpp"
#include "symwave/lifting.hpp"
#include "symwave/symmetrize.hpp"

#include <algorithm>
#include <set>

namespace symwave {

namespace fs = std::filesystem;

const std::vector<std::string> kCommands = {"digits", "orbits", "dual",   "framelike", "lift",
                                            "frame",  "symmetrize", "verify", "run"};

namespace {

[[noreturn]] void config_fail(const std::string& msg) { throw Error(ErrorKind::ConfigError, msg); }

const std::set<std::string> kConfigKeys = {"schema", "dilation", "digits", "group", "generators", "center", "n",
                                           "backend", "seed", "samples", "support_budget", "m0", "dual",
                                           "pipeline", "reduce", "symmetrize", "lifting", "utility_dual", "output",
                                           "assumed"};

fs::path resolve(const fs::path& base, const Json& v, const std::string& what) {
  if (!v.is_string()) config_fail(what + " must be a path string");
  fs::path p = v.get<std::string>();
  if (p.is_relative()) p = base / p;
  return p.lexically_normal();
}

fs::path existing(const fs::path& base, const Json& v, const std::string& what) {
  fs::path p = resolve(base, v, what);
  if (!fs::exists(p)) config_fail(what + " refers to a missing file: " + p.string());
  return p;
}

std::string choice(const Json& v, const std::string& what, const std::vector<std::string>& allowed) {
  if (!v.is_string()) config_fail(what + " must be a string");
  std::string s = v.get<std::string>();
  if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) config_fail(what + ": unknown value '" + s + "'");
  return s;
}

int int_value(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) config_fail(what + " must be an integer");
  return v.get<int>();
}

bool bool_value(const Json& v, const std::string& what) {
  if (!v.is_boolean()) config_fail(what + " must be true or false");
  return v.get<bool>();
}

std::string label_file(const MaskLabel& lab) {
  switch (lab.role) {
    case MaskRole::Refinable: return "refinable";
    case MaskRole::LastRow: return "last_row";
    case MaskRole::Wavelet: break;
  }
  return "wavelet_" + std::to_string(lab.p) + "_" + std::to_string(lab.i);
}

struct StageError {
  ErrorKind kind;
  std::string message;
  std::string stage;
};

/// Stage chain for one coefficient backend.
template <class C>
class Runner {
public:
  Runner(const ProjectConfig& cfg, bool write) : cfg_(cfg), write_(write) {}

  Json report = Json::object();
  std::vector<std::string> written;
  bool checks_passed = true;

  void contexts() {
    stage_ = "contexts";
    ctx_ = std::make_shared<const Contexts>(make_contexts(cfg_.M, cfg_.group, cfg_.center, cfg_.digits, cfg_.generators));
  }

  void digits() {
    contexts();
    emit("digits.json", to_json(ctx_->dil));
  }

  void orbits() {
    contexts();
    stage_ = "orbits";
    Json j = to_json(*ctx_);
    if (ctx_->sym.is_abelian()) {
      CyclicDecomposition dec = abelian_structure(*ctx_);
      Json od = Json::array();
      for (const auto& o : dec.orbits)
        od.push_back({{"complement_found", o.complement_found},
                      {"special_assumption", o.special_assumption},
                      {"digit_exact", o.digit_exact},
                      {"E_p", o.factors.elements},
                      {"orders", o.factors.orders},
                      {"notes", o.notes}});
      j["symmetrization"] = od;
    }
    emit("orbits.json", j);
  }

  void dual() {
    load_m0();
    stage_ = "dual";
    if (cfg_.dual_mode == "one") {
      mt0_ = TrigPoly<C>::constant(ctx_->dim(), CoeffTraits<C>::one());
    } else if (cfg_.dual_mode == "file") {
      mt0_ = mask_as<C>(import_mask(cfg_.dual_file), "dual mask file");
    } else {
      SupportSearch search;
      search.budget = cfg_.support_budget;
      mt0_ = as_backend<C>(dual_mask(exact_m0("dual mask solving"), *ctx_, cfg_.n, search));
    }
    orders("dual_m0", mt0_);
    emit("dual_m0.json", mask_to_json(mt0_));
  }

  void framelike() {
    dual();
    stage_ = "framelike";
    if (cfg_.symmetrize) {
      if (cfg_.reduce) config_fail("symmetrize needs the full orbit bank; unset reduce");
      plain_ = framelike_extension(m0_, mt0_, ctx_, cfg_.n);
      bank_stage("framelike", *plain_);
      stage_ = "symmetrize";
      sym_ = symmetrized_framelike(m0_, mt0_, ctx_, cfg_.n);
      bank_stage("symmetrized_framelike", *sym_);
      return;
    }
    plain_ = framelike_extension(m0_, mt0_, ctx_, cfg_.n);
    bank_stage("framelike", *plain_);
    if (cfg_.reduce) {
      stage_ = "reduce";
      plain_ = reduce_generators(*plain_);
      bank_stage("framelike_reduced", *plain_);
    }
  }

  void lift() {
    framelike();
    stage_ = "lift";
    std::map<RowKey, TrigPoly<C>> user;
    if (!cfg_.lifting.automatic) {
      for (const auto& f : cfg_.lifting.files) {
        TrigPoly<C> L = mask_as<C>(import_mask(f.file), "lifting file " + f.file.filename().string());
        user[{f.p, f.i}] = L.scaled(scale());
      }
    }
    LiftingFamily<C> fam = build_lifting_family(*plain_, user, cfg_.lifting.seed);
    Json lj = Json::array();
    for (std::size_t p = 0; p < fam.L.size(); ++p)
      for (std::size_t i = 0; i < fam.L[p].size(); ++i)
        lj.push_back({{"p", p}, {"i", i}, {"L", mask_to_json(fam.L[p][i])}});
    emit("lift/lifting_family.json", {{"schema", 1}, {"family", lj}, {"notes", fam.notes}});
    if (sym_) {
      stage_ = "symmetrized_lift";
      sym_ = symmetrized_lift(*sym_, fam);
      bank_stage("symmetrized_lift", *sym_);
      return;
    }
    plain_ = symwave::lift(*plain_, fam);
    bank_stage("lift", *plain_);
  }

  void frame() {
    load_m0();
    stage_ = "utility_dual";
    if (cfg_.utility_mode == "file") {
      mt0_ = mask_as<C>(import_mask(cfg_.utility_file), "utility dual file");
    } else {
      SupportSearch search;
      search.budget = cfg_.support_budget;
      ExactPoly m0 = exact_m0("utility dual solving");
      mt0_ = as_backend<C>(cfg_.utility_mode == "auto" ? auto_utility_dual(m0, *ctx_, cfg_.n, search)
                                                       : reduced_order_utility_dual(m0, *ctx_, cfg_.n, search));
    }
    orders("utility_dual", mt0_);
    emit("utility_dual.json", mask_to_json(mt0_));
    stage_ = "frame";
    plain_ = algorithm1(m0_, mt0_, ctx_, cfg_.n);
    bank_stage("frame", *plain_);
    if (cfg_.symmetrize) {
      stage_ = "symmetrize";
      sym_ = symmetrized_frames(m0_, mt0_, ctx_, cfg_.n);
      bank_stage("symmetrized_frame", *sym_);
    }
  }

  void chain(const std::string& pipeline) {
    if (pipeline == "frame") frame();
    else if (pipeline == "lift") lift();
    else framelike();
  }

  const std::string& stage() const { return stage_; }

private:
  const ProjectConfig& cfg_;
  bool write_;
  std::string stage_ = "config";
  std::shared_ptr<const Contexts> ctx_;
  TrigPoly<C> m0_, mt0_;
  std::optional<MaskFile> m0_file_;
  std::optional<FilterBankPair<C>> plain_;
  std::optional<FilterBankPair<Complex>> sym_;

  C scale() const {
    if constexpr (CoeffTraits<C>::exact) return QSqrt(cfg_.lifting.scale);
    else return Complex(cfg_.lifting.scale.get_d(), 0.0);
  }

  void emit(const std::string& rel, const Json& j) {
    if (!write_) return;
    write_json(cfg_.output / rel, j);
    written.push_back(rel);
  }

  void load_m0() {
    contexts();
    stage_ = "m0";
    if (cfg_.m0_file.empty()) config_fail("config has no m0 file");
    m0_file_ = import_mask(cfg_.m0_file);
    if (m0_file_->dim != ctx_->dim()) config_fail("m0 dimension differs from the dilation matrix");
    m0_ = mask_as<C>(*m0_file_, "m0 file");
    orders("m0", m0_);
    emit("m0.json", mask_to_json(m0_));
  }

  ExactPoly exact_m0(const std::string& what) const {
    if (!m0_file_->exact) throw Error(ErrorKind::ExactPathUnavailable, what + " needs an exact m0");
    return m0_file_->exact_poly;
  }

  void orders(const std::string& name, const TrigPoly<C>& t) {
    int nmax = cfg_.n + 3;
    report["orders"][name] = {{"sum_rule", sum_rule_order(t, ctx_->dil, nmax)},
                              {"vanishing_moments", vanishing_moment_order(t, nmax)},
                              {"symmetric", check_symmetry(t, ctx_->sym)},
                              {"bound", nmax}};
  }

  template <class B>
  void bank_stage(const std::string& name, const FilterBankPair<B>& bank) {
    VerificationReport rep = verify_bank(bank, cfg_.samples, cfg_.seed);
    for (const auto& a : cfg_.assumed) rep.assumed.push_back(a);
    rep.assumed.push_back("the masks generate a dual wavelet frame of L2(R^d)");
    checks_passed = checks_passed && rep.all_passed();
    Json masks = Json::array();
    for (std::size_t v = 0; v < bank.size(); ++v) {
      std::string base = name + "/" + label_file(bank.labels[v]);
      Json entry = {{"label", bank.labels[v].name()}, {"primal", base + ".primal.json"}, {"dual", base + ".dual.json"}};
      emit(base + ".primal.json", mask_to_json(bank.primal[v]));
      emit(base + ".dual.json", mask_to_json(bank.dual[v]));
      if (!bank.laws.empty() && !bank.laws[v].empty()) {
        Json laws = Json::array();
        for (const auto& law : bank.laws[v]) laws.push_back(to_json(law));
        entry["laws"] = laws;
      }
      masks.push_back(entry);
    }
    Json bj = {{"schema", 1},
               {"provenance", to_string(bank.provenance)},
               {"backend", backend_mode<B>()},
               {"order", bank.order},
               {"verified", bank.verified},
               {"required_primal_vm", bank.required_primal_vm},
               {"required_dual_vm", bank.required_dual_vm},
               {"masks", masks},
               {"notes", bank.notes}};
    emit(name + "/bank.json", bj);
    Json sj = {{"name", name}, {"provenance", to_string(bank.provenance)}, {"verification", to_json(rep)}};
    report["stages"].push_back(sj);
    report["verification"] = sj["verification"];
  }
};

template <class C>
void dispatch(Runner<C>& r, const std::string& command, const ProjectConfig& cfg) {
  if (command == "digits") r.digits();
  else if (command == "orbits") r.orbits();
  else if (command == "dual") r.dual();
  else if (command == "framelike") r.framelike();
  else if (command == "lift") r.lift();
  else if (command == "frame") r.frame();
  else r.chain(cfg.pipeline);
}

template <class C>
RunResult run_backend(const std::string& command, const ProjectConfig& cfg) {
  ProjectConfig local = cfg;
  if (command == "symmetrize") local.symmetrize = true;
  bool write = command != "verify";
  Runner<C> runner(local, write);
  RunResult out;
  std::optional<StageError> err;
  try {
    dispatch(runner, command, local);
  } catch (const Error& e) {
    std::string what = e.what();
    std::string prefix = std::string(to_string(e.kind())) + ": ";
    if (what.rfind(prefix, 0) == 0) what = what.substr(prefix.size());
    err = StageError{e.kind(), what, runner.stage()};
  } catch (const Json::exception& e) {
    err = StageError{ErrorKind::ParseError, e.what(), runner.stage()};
  } catch (const fs::filesystem_error& e) {
    err = StageError{ErrorKind::ConfigError, e.what(), runner.stage()};
  }
  Json report = {{"schema", 1}, {"command", command}, {"backend", local.backend}, {"seed", local.seed}};
  if (command != "digits" && command != "orbits" && command != "dual")
    report["pipeline"] = command == "run" || command == "verify" || command == "symmetrize" ? local.pipeline : command;
  report["symmetrize"] = local.symmetrize;
  for (auto& [k, v] : runner.report.items()) report[k] = v;
  if (!report.contains("stages")) report["stages"] = Json::array();
  if (err) {
    out.exit_code = exit_code_for(err->kind);
    report["error"] = {{"kind", to_string(err->kind)}, {"message", err->message}, {"stage", err->stage}};
  } else {
    out.exit_code = runner.checks_passed ? kExitOk : kExitVerificationFailure;
  }
  report["artifacts"] = runner.written;
  report["exit_code"] = out.exit_code;
  out.report = report;
  try {
    write_json(local.output / "report.json", report);
  } catch (const Error& e) {
    out.report["write_error"] = e.what();
    if (out.exit_code == kExitOk) out.exit_code = kExitConfigError;
  }
  return out;
}

}  // namespace

LiftingFileSpec parse_lifting_arg(const std::string& arg) {
  auto a = arg.find(':');
  auto b = a == std::string::npos ? a : arg.find(':', a + 1);
  if (b == std::string::npos) config_fail("--L expects p:i:file, got '" + arg + "'");
  LiftingFileSpec s;
  try {
    s.p = std::stoul(arg.substr(0, a));
    s.i = std::stoul(arg.substr(a + 1, b - a - 1));
  } catch (const std::exception&) {
    config_fail("--L expects integer p and i, got '" + arg + "'");
  }
  s.file = arg.substr(b + 1);
  if (s.file.empty() || !fs::exists(s.file)) config_fail("--L file does not exist: " + s.file.string());
  return s;
}

ProjectConfig parse_config(const Json& j, const fs::path& base) {
  if (!j.is_object()) config_fail("config must be a JSON object");
  for (const auto& [key, v] : j.items())
    if (!kConfigKeys.count(key)) config_fail("unknown config field \"" + key + "\"");
  if (j.contains("schema") && j.at("schema") != 1) config_fail("unsupported config schema");
  ProjectConfig c;
  try {
    if (!j.contains("dilation")) config_fail("config needs \"dilation\"");
    c.M = imat_from_json(j.at("dilation"), "dilation");
    if (j.contains("digits")) {
      std::vector<IVec> d;
      for (const auto& s : j.at("digits")) d.push_back(ivec_from_json(s, "digits"));
      c.digits = d;
    }
    if (j.contains("group") == j.contains("generators")) config_fail("config needs exactly one of \"group\" and \"generators\"");
    c.generators = j.contains("generators");
    for (const auto& E : j.at(c.generators ? "generators" : "group")) c.group.push_back(imat_from_json(E, "group"));
    c.center = j.contains("center") ? rvec_from_json(j.at("center"), "center") : RVec(c.M.dim(), Rational(0));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) config_fail(e.what());
    throw;
  }
  if (j.contains("n")) c.n = int_value(j.at("n"), "n");
  if (j.contains("backend")) c.backend = choice(j.at("backend"), "backend", {"exact", "float"});
  if (j.contains("seed")) c.seed = static_cast<std::uint64_t>(int_value(j.at("seed"), "seed"));
  if (j.contains("samples")) c.samples = int_value(j.at("samples"), "samples");
  if (c.samples < 1) config_fail("samples must be at least 1");
  if (j.contains("support_budget")) c.support_budget = int_value(j.at("support_budget"), "support_budget");
  if (j.contains("m0")) c.m0_file = existing(base, j.at("m0"), "m0");
  if (j.contains("dual")) {
    const Json& d = j.at("dual");
    if (!d.is_object()) config_fail("dual must be an object");
    if (d.contains("mode")) c.dual_mode = choice(d.at("mode"), "dual.mode", {"one", "file", "solve"});
    if (c.dual_mode == "file") {
      if (!d.contains("file")) config_fail("dual.mode file needs dual.file");
      c.dual_file = existing(base, d.at("file"), "dual.file");
    }
  }
  if (j.contains("pipeline")) c.pipeline = choice(j.at("pipeline"), "pipeline", {"framelike", "lift", "frame"});
  if (j.contains("reduce")) c.reduce = bool_value(j.at("reduce"), "reduce");
  if (j.contains("symmetrize")) c.symmetrize = bool_value(j.at("symmetrize"), "symmetrize");
  if (j.contains("lifting")) {
    const Json& l = j.at("lifting");
    if (!l.is_object()) config_fail("lifting must be an object");
    if (l.contains("L")) {
      for (const auto& e : l.at("L")) {
        if (!e.is_object() || !e.contains("p") || !e.contains("i") || !e.contains("file"))
          config_fail("lifting.L entries need p, i and file");
        c.lifting.files.push_back({static_cast<std::size_t>(int_value(e.at("p"), "lifting.L.p")),
                                   static_cast<std::size_t>(int_value(e.at("i"), "lifting.L.i")),
                                   existing(base, e.at("file"), "lifting.L.file")});
      }
    }
    if (l.contains("L_scale")) {
      if (!l.at("L_scale").is_string() && !l.at("L_scale").is_number_integer())
        config_fail("lifting.L_scale must be a rational string");
      c.lifting.scale = l.at("L_scale").is_string() ? parse_rational(l.at("L_scale").get<std::string>())
                                                    : rational_from_int(l.at("L_scale").get<std::int64_t>());
    }
    if (l.contains("auto")) c.lifting.automatic = bool_value(l.at("auto"), "lifting.auto");
    if (l.contains("seed")) {
      try {
        c.lifting.seed = ivec_from_json(l.at("seed"), "lifting.seed");
      } catch (const Error& e) {
        config_fail(e.what());
      }
    }
  }
  if (j.contains("utility_dual")) {
    const Json& u = j.at("utility_dual");
    if (!u.is_object()) config_fail("utility_dual must be an object");
    if (u.contains("mode")) c.utility_mode = choice(u.at("mode"), "utility_dual.mode", {"file", "reduced", "auto"});
    if (u.contains("file")) c.utility_file = existing(base, u.at("file"), "utility_dual.file");
    if (c.utility_mode == "file" && c.utility_file.empty()) config_fail("utility_dual.mode file needs utility_dual.file");
  }
  if (j.contains("output")) c.output = resolve(base, j.at("output"), "output");
  else c.output = (base / "out").lexically_normal();
  if (j.contains("assumed")) {
    for (const auto& a : j.at("assumed")) {
      if (!a.is_string()) config_fail("assumed entries must be strings");
      c.assumed.push_back(a.get<std::string>());
    }
  }
  return c;
}

ProjectConfig load_config(const fs::path& file) {
  Json j = read_json(file);
  fs::path base = file.has_parent_path() ? file.parent_path() : fs::path(".");
  return parse_config(j, base);
}

RunResult run_command(const std::string& command, const ProjectConfig& cfg) {
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
    throw Error(ErrorKind::ConfigError, "unknown command '" + command + "'");
  if (cfg.backend == "float") return run_backend<Complex>(command, cfg);
  return run_backend<QSqrt>(command, cfg);
}

}  // namespace symwave
