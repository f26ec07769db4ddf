#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "srlab/ci.hpp"
#include "srlab/enumerate.hpp"
#include "srlab/report.hpp"

namespace {

using namespace srlab;

// group spec grammar: factors separated by 'x', each <p> or <p>^<k>,
// e.g. 2^5, 2^5x3, 2^2x7, 4
Group parse_group(const std::string& spec) {
  std::vector<int> orders;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t end = spec.find('x', pos);
    if (end == std::string::npos) end = spec.size();
    std::string tok = spec.substr(pos, end - pos);
    std::size_t caret = tok.find('^');
    int base = std::stoi(tok.substr(0, caret));
    int exp = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
    if (exp < 1) throw CLI::ValidationError("group", "bad exponent in group spec");
    for (int i = 0; i < exp; ++i) orders.push_back(base);
    pos = end + 1;
  }
  if (orders.empty()) throw CLI::ValidationError("group", "empty group spec");
  return make_group(orders);
}

std::vector<int> parse_set(const std::string& csv) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t end = csv.find(',', pos);
    if (end == std::string::npos) end = csv.size();
    out.push_back(std::stoi(csv.substr(pos, end - pos)));
    pos = end + 1;
  }
  return out;
}

std::string classes_string(const std::vector<std::vector<int>>& classes) {
  std::string s = "[";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < classes[i].size(); ++j) {
      if (j) s += ",";
      s += std::to_string(classes[i][j]);
    }
    s += "]";
  }
  return s + "]";
}

int run_enumerate(const std::string& group_spec, const std::string& constraint,
                  const std::string& out_path, int workers) {
  Group g = parse_group(group_spec);
  Catalog cat = enumerate_srings(g, constraint, workers);
  write_catalog_file(cat, out_path);
  std::cout << "entries=" << cat.entries.size()
            << " scope=" << (cat.scope == Catalog::kRaw ? "raw" : "slice") << "\n";
  return 0;
}

int run_classify(const std::string& in_path, const std::string& mode) {
  Catalog cat = read_catalog_file(in_path);
  ClassificationReport rep = classify(cat, mode);
  std::cout << "classes=" << rep.classes.size() << "\n";
  std::cout << "cayley_classes=" << rep.cayley_class_count << "\n";
  return 0;
}

int run_analyze(const std::string& in_path, const std::string& out_path) {
  Catalog cat = read_catalog_file(in_path);
  CiEngine engine;
  for (CatalogEntry& e : cat.entries) {
    SRingPartition p;
    p.group = cat.group;
    p.classes = e.classes;
    SRing a = validate(p);
    e.tags["rank"] = std::to_string(a.rank);
    e.tags["osize"] = std::to_string(thin_radical(a).order());
    e.tags["decomposable"] = is_decomposable(a) ? "1" : "0";
    e.tags["cyclotomic"] = is_cyclotomic(a) ? "1" : "0";
    e.tags["normal"] = is_normal(a) ? "1" : "0";
    e.tags["schurian"] = is_schurian(a) ? "1" : "0";
    CiCertificate cert = engine.certify(a);
    e.tags["ci"] = cert.ci() ? "1" : "unknown";
  }
  if (!out_path.empty()) {
    write_catalog_file(cat, out_path);
  } else {
    write_catalog(cat, std::cout);
  }
  return 0;
}

int run_report(const std::string& dir) {
  Catalog c23 = read_catalog_file(dir + "/c23_p2.srcat");
  Catalog c24 = read_catalog_file(dir + "/c24_p2.srcat");
  Catalog c25 = read_catalog_file(dir + "/c25_p2.srcat");
  SRingReport rep = lemma_reports(c23, c24, c25);
  print_report(rep, std::cout);
  if (!rep.all_pass()) {
    std::cerr << "verification mismatch\n";
    return 2;
  }
  return 0;
}

int run_ci_subset(const std::string& group_spec, const std::string& set_csv) {
  Group g = parse_group(group_spec);
  std::vector<int> s = parse_set(set_csv);
  bool ci = babai_ci_subset(g, s);
  std::cout << "CI: " << (ci ? "yes" : "no") << "\n";
  if (g.size <= 16) {
    bool oracle = brute_ci_oracle(g, s);
    std::cout << "oracle: " << (oracle ? "yes" : "no") << "\n";
    if (oracle != ci) {
      std::cerr << "verification mismatch between criterion and oracle\n";
      return 2;
    }
  }
  return 0;
}

int run_closure(const std::string& group_spec, const std::vector<std::string>& seeds) {
  Group g = parse_group(group_spec);
  std::vector<std::vector<int>> seed_sets;
  for (const std::string& s : seeds) seed_sets.push_back(parse_set(s));
  SRing a = schur_closure(g, seed_sets);
  std::cout << classes_string(a.classes) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur ring laboratory for small abelian groups"};
  app.require_subcommand(1);

  std::string group_spec, constraint = "all", out_path, in_path, mode = "combinatorial";
  std::string dir = ".", set_csv;
  std::vector<std::string> seeds;
  int workers = 0;
  int lemmas = 8;

  CLI::App* enumerate = app.add_subcommand("enumerate", "enumerate S-rings over a group");
  enumerate->add_option("--group", group_spec, "group spec, e.g. 2^4 or 2^5x3")->required();
  enumerate->add_option("--constraint", constraint, "all or p<prime>");
  enumerate->add_option("--out", out_path, "output catalog path")->required();
  enumerate->add_option("--workers", workers, "worker threads (default: SRLAB_THREADS)");

  CLI::App* classify_cmd = app.add_subcommand("classify", "classify a catalog");
  classify_cmd->add_option("--in", in_path, "catalog path")->required();
  classify_cmd->add_option("--mode", mode, "cayley or combinatorial");

  CLI::App* analyze = app.add_subcommand("analyze", "annotate catalog entries");
  analyze->add_option("--in", in_path, "catalog path")->required();
  analyze->add_option("--out", out_path, "annotated output path (default: stdout)");

  CLI::App* report = app.add_subcommand("report", "recompute the catalog-level facts");
  report->add_option("--dir", dir, "directory holding c2{3,4,5}_p2.srcat")->required();
  report->add_option("--lemmas", lemmas, "report section (only 8 is available)");

  CLI::App* ci_subset = app.add_subcommand("ci-subset", "check one connection set");
  ci_subset->add_option("--group", group_spec, "group spec")->required();
  ci_subset->add_option("--set", set_csv, "comma-separated element indices")->required();

  CLI::App* closure = app.add_subcommand("closure", "Schur closure of seed sets");
  closure->add_option("--group", group_spec, "group spec")->required();
  closure->add_option("--seed", seeds, "comma-separated element indices (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors exit 1, --help exits 0
  }

  try {
    if (enumerate->parsed()) return run_enumerate(group_spec, constraint, out_path, workers);
    if (classify_cmd->parsed()) return run_classify(in_path, mode);
    if (analyze->parsed()) return run_analyze(in_path, out_path);
    if (report->parsed()) {
      if (lemmas != 8) {
        std::cerr << "only --lemmas 8 is available\n";
        return 1;
      }
      return run_report(dir);
    }
    if (ci_subset->parsed()) return run_ci_subset(group_spec, set_csv);
    if (closure->parsed()) return run_closure(group_spec, seeds);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
