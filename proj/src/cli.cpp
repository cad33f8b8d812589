#include "kh/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "kh/bracket.hpp"
#include "kh/cube.hpp"
#include "kh/family.hpp"
#include "kh/scan.hpp"
#include "kh/table.hpp"

namespace kh {

namespace {

Diagram load_diagram(const std::string& path, const std::string& orient) {
  std::ifstream in(path);
  if (!in) throw DiagramError("cannot open input file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw DiagramError("empty input file " + path);
  Diagram d;
  if (text[first] == '{')
    d = Diagram::from_json(nlohmann::ordered_json::parse(text));
  else
    d = Diagram::from_pd_code(text);
  if (!orient.empty()) {
    std::vector<int> flags;
    std::stringstream os(orient);
    std::string tok;
    while (std::getline(os, tok, ',')) flags.push_back(std::stoi(tok));
    d = d.with_orientation(flags);
  }
  return d;
}

int default_threads() {
  if (const char* env = std::getenv("KH_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

GradedTable run_engine(const Diagram& d, const CoefficientRing& ring,
                       const std::string& engine, int threads, int threshold) {
  if (engine == "naive") {
    if (d.crossing_count() > threshold)
      throw CubeThresholdError("engine=naive rejects diagrams above the naive threshold (" +
                               std::to_string(d.crossing_count()) + " > " +
                               std::to_string(threshold) + ")");
    return naive_khovanov(d, ring, threads, threshold);
  }
  if (engine == "scan") {
    ScanOptions opts;
    opts.threads = threads;
    return scan_khovanov(d, ring, opts);
  }
  return khovanov_auto(d, ring, threads, threshold);
}

std::string render_table(const GradedTable& t, const std::string& format) {
  if (format == "json") return t.to_json().dump(2) + "\n";
  if (format == "csv") return t.to_csv();
  return t.to_grid();
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CliResult res;
  std::ostringstream out;

  CLI::App app{"Khovanov homology, Jones polynomials and rotant constructions "
               "for planar link diagrams"};
  app.require_subcommand(1);

  std::string input, input2, orient, orient2, ring_name = "q", engine = "auto";
  std::string format = "text", fixture_path;
  int threads = default_threads();
  int threshold = kDefaultNaiveThreshold;
  int family_n = -1, twists = 0, crossing = -1, nmax = 1, cap = 18;
  bool flip = false, have_twists = false;

  auto* jones = app.add_subcommand("jones", "Kauffman bracket and Jones polynomials");
  jones->add_option("pd", input, "PD code or JSON diagram file")->required();
  jones->add_option("--orient", orient, "per-component orientation flags, e.g. 0,1");
  jones->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* kh = app.add_subcommand("kh", "bigraded Khovanov homology table");
  kh->add_option("pd", input)->required();
  kh->add_option("--ring", ring_name, "q, z, or f<p>");
  kh->add_option("--engine", engine)->check(CLI::IsMember({"naive", "scan", "auto"}));
  kh->add_option("--threads", threads);
  kh->add_option("--threshold", threshold, "naive engine crossing limit");
  kh->add_option("--orient", orient);
  kh->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv", "grid"}));

  auto* cmp = app.add_subcommand("compare", "diff two homology tables");
  cmp->add_option("pd1", input)->required();
  cmp->add_option("pd2", input2)->required();
  cmp->add_option("--ring", ring_name);
  cmp->add_option("--engine", engine)->check(CLI::IsMember({"naive", "scan", "auto"}));
  cmp->add_option("--threads", threads);
  cmp->add_option("--orient1", orient);
  cmp->add_option("--orient2", orient2);
  cmp->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* rot = app.add_subcommand("rotant", "rotor/stator constructions and checks");
  rot->require_subcommand(1);

  auto* build = rot->add_subcommand("build", "compose a fixture into a link diagram");
  build->add_option("--fixture", fixture_path)->required();
  auto* nopt = build->add_option("--n", family_n, "family index (inserts -20-n twists)");
  auto* topt = build->add_option("--twists", twists, "raw twist parameter");
  build->add_flag("--flip", flip, "rotate the rotor by pi before composing");
  build->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* les = rot->add_subcommand("les", "long exact sequence consistency check");
  les->add_option("pd", input)->required();
  les->add_option("--crossing", crossing)->required();
  les->add_option("--ring", ring_name);
  les->add_option("--threads", threads);
  les->add_option("--orient", orient);

  auto* chain = rot->add_subcommand("chain", "iterated family grading/support checks");
  chain->add_option("--fixture", fixture_path)->required();
  chain->add_option("--nmax", nmax)->required();
  chain->add_option("--ring", ring_name);
  chain->add_option("--cap", cap, "skip homology above this crossing count");
  chain->add_option("--threads", threads);

  std::vector<const char*> argv;
  argv.push_back("khtool");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse((int)argv.size(), argv.data());
  } catch (const CLI::CallForHelp& e) {
    res.out = app.help();
    return res;
  } catch (const CLI::ParseError& e) {
    res.err = std::string(e.what()) + "\n";
    res.exit_code = 2;
    return res;
  }

  try {
    if (*jones) {
      Diagram d = load_diagram(input, orient);
      LaurentPoly br = kauffman_bracket(d);
      LaurentPoly uj = unnormalized_jones(d);
      ReducedJones rj = jones_reduced(d);
      if (format == "json") {
        nlohmann::ordered_json j;
        j["writhe"] = d.writhe();
        j["components"] = d.component_count() + d.free_loops();
        j["bracket"] = br.to_json("A");
        j["unnormalized"] = uj.to_json("q");
        j["reduced"] = rj.engine_form.to_json("q");
        j["reduced_classical"] = rj.classical_form.to_json("t");
        j["divisible"] = rj.divisible;
        out << j.dump(2) << "\n";
      } else {
        out << "writhe: " << d.writhe() << "\n";
        out << "bracket: " << br.to_string("A") << "\n";
        out << "unnormalized: " << uj.to_string("q") << "\n";
        out << "reduced: " << rj.engine_form.to_string("q") << "\n";
        out << "reduced classical (t = q^2): " << rj.classical_form.to_string("t") << "\n";
        if (!rj.divisible) out << "warning: not divisible by q + q^-1\n";
      }
    } else if (*kh) {
      Diagram d = load_diagram(input, orient);
      CoefficientRing ring = CoefficientRing::parse(ring_name);
      GradedTable t = run_engine(d, ring, engine, threads, threshold);
      out << render_table(t, format == "grid" ? "text" : format);
    } else if (*cmp) {
      Diagram a = load_diagram(input, orient);
      Diagram b = load_diagram(input2, orient2);
      CoefficientRing ring = CoefficientRing::parse(ring_name);
      GradedTable ta = run_engine(a, ring, engine, threads, threshold);
      GradedTable tb = run_engine(b, ring, engine, threads, threshold);
      TableDiff diff = compare_tables(ta, tb);
      if (format == "json")
        out << diff.to_json().dump(2) << "\n";
      else
        out << diff.to_string();
      if (!diff.identical()) res.exit_code = 1;
    } else if (*build) {
      if (nopt->count() == 0 && topt->count() == 0)
        throw CLI::ValidationError("rotant build", "need --n or --twists");
      have_twists = topt->count() > 0;
      FixtureBundle fx = FixtureBundle::load(fixture_path);
      TwistResult tw;
      if (have_twists)
        tw = build_parametrized(fx, twists, flip);
      else {
        FamilyPair fp = family(fx, family_n);
        tw = flip ? fp.rotated : fp.link;
      }
      if (format == "json") {
        nlohmann::ordered_json j;
        j["diagram"] = tw.diagram.to_json();
        j["pd"] = tw.diagram.to_pd_code();
        j["writhe"] = tw.diagram.writhe();
        j["negative_crossings"] = tw.diagram.negative_crossings();
        j["components"] = tw.diagram.component_count() + tw.diagram.free_loops();
        j["twist_crossings"] = tw.meta.crossing_indices;
        out << j.dump(2) << "\n";
      } else {
        out << tw.diagram.to_pd_code() << "\n";
        out << "crossings: " << tw.diagram.crossing_count()
            << "  writhe: " << tw.diagram.writhe()
            << "  N-: " << tw.diagram.negative_crossings()
            << "  components: " << tw.diagram.component_count() + tw.diagram.free_loops()
            << "\n";
      }
    } else if (*les) {
      Diagram d = load_diagram(input, orient);
      CoefficientRing ring = CoefficientRing::parse(ring_name);
      LesReport rep = les_check(d, crossing, ring, threads);
      out << "c: " << rep.c << "\n";
      out << "subadditivity: " << (rep.subadditivity_ok ? "ok" : "FAIL") << "\n";
      out << "euler identity: " << (rep.euler_ok ? "ok" : "FAIL") << "\n";
      out << "forced isomorphisms: " << (rep.forced_iso_ok ? "ok" : "FAIL") << "\n";
      if (!rep.detail.empty()) out << rep.detail << "\n";
      if (!rep.ok) res.exit_code = 1;
    } else if (*chain) {
      FixtureBundle fx = FixtureBundle::load(fixture_path);
      CoefficientRing ring = CoefficientRing::parse(ring_name);
      ChainCheckReport rep = proposition_chain_check(fx, nmax, ring, cap, threads);
      out << rep.to_string();
      bool failed = !rep.arithmetic_all_ok;
      for (const auto& e : rep.entries) {
        if (e.support_ok && !*e.support_ok) failed = true;
        if (e.dimension_ok && !*e.dimension_ok) failed = true;
      }
      if (failed) res.exit_code = 1;
    }
  } catch (const CubeThresholdError& e) {
    res.err = std::string(e.what()) + "\n";
    res.exit_code = 2;
    res.out = out.str();
    return res;
  } catch (const DiagramError& e) {
    res.err = std::string("input error: ") + e.what() + "\n";
    res.exit_code = 2;
    res.out = out.str();
    return res;
  } catch (const TangleError& e) {
    res.err = std::string("input error: ") + e.what() + "\n";
    res.exit_code = 2;
    res.out = out.str();
    return res;
  } catch (const std::exception& e) {
    res.err = std::string("error: ") + e.what() + "\n";
    res.exit_code = 2;
    res.out = out.str();
    return res;
  }

  res.out = out.str();
  return res;
}

}  // namespace kh
