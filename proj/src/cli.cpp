#include "stratcat/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "stratcat/category.hpp"
#include "stratcat/cube.hpp"
#include "stratcat/homology.hpp"
#include "stratcat/polytope.hpp"
#include "stratcat/poset.hpp"
#include "stratcat/simplicial.hpp"

namespace stratcat {

namespace {

struct ReportLine {
  std::string suite;
  std::string case_name;
  bool pass = true;
  std::string witness;
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw usage_error("cannot open '" + path + "'");
  return nlohmann::json::parse(file);
}

std::vector<Rat> grid_from_option(const std::string& option) {
  if (option.empty() || option == "default") return active_grid();
  return parse_grid(option);
}

using Task = std::function<std::vector<ReportLine>()>;

std::vector<ReportLine> run_tasks(const std::vector<Task>& tasks, int jobs) {
  std::vector<std::vector<ReportLine>> results(tasks.size());
  if (jobs <= 1) {
    for (std::size_t k = 0; k < tasks.size(); ++k) results[k] = tasks[k]();
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex error_lock;
    std::exception_ptr first_error;
    auto worker = [&] {
      while (true) {
        std::size_t k = next.fetch_add(1);
        if (k >= tasks.size()) return;
        {
          std::lock_guard<std::mutex> hold(error_lock);
          if (first_error) return;
        }
        try {
          results[k] = tasks[k]();
        } catch (...) {
          std::lock_guard<std::mutex> hold(error_lock);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::size_t count = std::min(static_cast<std::size_t>(jobs), std::max<std::size_t>(tasks.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  std::vector<ReportLine> merged;
  for (auto& part : results) merged.insert(merged.end(), part.begin(), part.end());
  return merged;
}

int emit(std::vector<ReportLine> lines, std::ostream& out) {
  std::stable_sort(lines.begin(), lines.end(), [](const ReportLine& a, const ReportLine& b) {
    if (a.suite != b.suite) return a.suite < b.suite;
    return a.case_name < b.case_name;
  });
  bool any_fail = false;
  for (const ReportLine& line : lines) {
    nlohmann::ordered_json row;
    row["suite"] = line.suite;
    row["case"] = line.case_name;
    row["status"] = line.pass ? "PASS" : "FAIL";
    row["witness"] = line.witness;
    out << row.dump() << "\n";
    if (!line.pass) any_fail = true;
  }
  return any_fail ? 1 : 0;
}

std::vector<ReportLine> homology_lines(const std::string& target, const std::string& ring,
                                       const std::string& coeffs_path) {
  StratifiedCategoryData data = std::filesystem::exists(target)
                                    ? load_valid_category(read_json_file(target))
                                    : builtin_example(target);
  CoefficientFunctor functor;
  const CoefficientFunctor* coeffs = nullptr;
  if (!coeffs_path.empty()) {
    functor = load_coefficients(data, read_json_file(coeffs_path));
    coeffs = &functor;
  }
  ChainComplex complex = morse_complex(data, coeffs);

  std::vector<ReportLine> lines;
  if (ring == "z") {
    auto groups = integral_homology(complex);
    for (std::size_t k = 0; k < groups.size(); ++k)
      lines.push_back({"homology", "H" + std::to_string(k), true,
                       format_integral(groups[k].first, groups[k].second)});
  } else {
    auto dims = mod2_homology(complex);
    for (std::size_t k = 0; k < dims.size(); ++k)
      lines.push_back({"homology", "H" + std::to_string(k), true, format_mod2(dims[k])});
  }
  return lines;
}

std::vector<ReportLine> cube_lines_for(const IncreasingSequence& seq, const std::vector<Rat>& grid) {
  std::vector<ReportLine> lines;
  for (const Rat& s : level_samples(seq)) {
    std::string case_name = seq.label() + " @ " + format_rat(s);
    std::vector<int> closure = closure_classes(seq, grid, s);
    std::vector<int> canonical = canonical_classes(seq, grid, s);
    if (closure == canonical) {
      std::set<int> ids(closure.begin(), closure.end());
      lines.push_back({"classes", case_name, true,
                       std::to_string(closure.size()) + " points in " +
                           std::to_string(ids.size()) + " classes"});
    } else {
      std::size_t at = 0;
      while (closure[at] == canonical[at]) ++at;
      lines.push_back({"classes", case_name, false,
                       "closure and canonical partitions disagree at point #" +
                           std::to_string(at)});
    }
    bool stratum_ok = true;
    std::string stratum_witness = "stratum preserved by the canonical form";
    for (const auto& coords : interior_grid_points(seq.length(), grid)) {
      LeveledPoint x = make_leveled_point(seq, coords, s);
      if (stratum_of(x) != stratum_of(canonical_form(x))) {
        stratum_ok = false;
        stratum_witness = "stratum changes at " + x.label();
        break;
      }
    }
    lines.push_back({"stratum", case_name, stratum_ok, stratum_witness});
  }
  return lines;
}

std::vector<ReportLine> fiber_lines_for(const IncreasingSequence& seq) {
  std::vector<ReportLine> lines;
  for (int band = 0; band + 1 <= seq.length(); ++band) {
    if (seq.entries[band] == seq.entries[band + 1]) continue;
    bool ok = collapse_fiber_equivalent(seq, band);
    std::string witness =
        ok ? std::to_string(collapse_vertex_tags(seq.length(), band).size()) +
                 " vertices matched, face lattices agree"
           : "face lattices differ under the tag bijection";
    lines.push_back({"fiber", seq.label() + " band " + std::to_string(band), ok, witness});
  }
  return lines;
}

std::vector<ReportLine> qbar_lines_for(int n, int band, const std::vector<Rat>& grid) {
  std::vector<ReportLine> lines;
  FinitePoset chain = chain_poset(n + 1);
  std::vector<int> entries(n + 1);
  for (int k = 0; k <= n; ++k) entries[k] = k;
  IncreasingSequence seq = make_sequence_by_index(chain, entries);
  for (const CheckLine& check : verify_qbar_lemmas(seq, band, grid))
    lines.push_back({check.suite, check.name, check.pass, check.witness});

  JacobianAudit audit = jacobian_class_audit(n, band);
  std::string base = "n=" + std::to_string(n) + " band=" + std::to_string(band);
  lines.push_back({"jacobian", base + " strict", audit.all_unit,
                   std::to_string(audit.family_count) + " members, det in [" +
                       audit.min_det.str() + "," + audit.max_det.str() + "]"});
  bool boundary_ok = audit.boundary_all_nonneg && (n - 1 < 2 || audit.boundary_zero_attained);
  lines.push_back({"jacobian", base + " boundary", boundary_ok,
                   std::to_string(audit.boundary_count) + " members, min det " +
                       audit.boundary_min_det.str()});
  return lines;
}

std::vector<ReportLine> nerve_lines(const std::string& path, int dim) {
  nlohmann::json data = read_json_file(path);
  FiniteSimplicialSet nerve;
  if (data.is_object() && data.contains("homs"))
    nerve = category_nerve(load_valid_category(data));
  else
    nerve = poset_nerve(load_valid_poset(data));

  NerveCertificate cert = infinity_check(nerve, dim);
  std::vector<ReportLine> lines;
  lines.push_back({"inner_horns", "existence", cert.inner_fillers_exist, cert.inner_witness});
  lines.push_back({"inner_horns", "uniqueness", cert.inner_fillers_unique, cert.inner_witness});
  lines.push_back({"kan", "outer_horns", true, cert.kan_witness});
  for (int d = 2; d <= dim; ++d) {
    SpineCheck spine = spine_extension_check(nerve, d);
    lines.push_back({"spine", "dim " + std::to_string(d), spine.injective && spine.surjective,
                     spine.witness});
  }
  return lines;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact verification toolkit for stratified path and cube calculus"};
  app.require_subcommand(1);

  std::string homology_target;
  std::string homology_ring = "z";
  std::string homology_coeffs;
  CLI::App* cmd_homology = app.add_subcommand("homology", "homology of a stratified category");
  cmd_homology->add_option("target", homology_target, "category file or builtin name")->required();
  cmd_homology->add_option("--ring", homology_ring, "coefficient ring")
      ->check(CLI::IsMember({"z", "z2"}));
  cmd_homology->add_option("--coeffs", homology_coeffs, "coefficient functor file");

  std::string cubes_poset;
  int cubes_max_len = 0;
  std::string cubes_grid = "default";
  int cubes_jobs = 1;
  CLI::App* cmd_cubes =
      app.add_subcommand("verify-cubes", "closure vs canonical level classes over a poset");
  cmd_cubes->add_option("--poset", cubes_poset, "poset file")->required();
  cmd_cubes->add_option("--max-len", cubes_max_len, "maximal sequence length")
      ->required()
      ->check(CLI::Range(1, 6));
  cmd_cubes->add_option("--grid", cubes_grid, "'default' or a comma-separated rational grid");
  cmd_cubes->add_option("--jobs", cubes_jobs, "worker threads")->check(CLI::Range(1, 64));

  std::string fiber_poset;
  int fiber_max_len = 0;
  int fiber_jobs = 1;
  CLI::App* cmd_fiber =
      app.add_subcommand("fiber-compare", "level polytope vs simplex fiber per band");
  cmd_fiber->add_option("--poset", fiber_poset, "poset file")->required();
  cmd_fiber->add_option("--max-len", fiber_max_len, "maximal sequence length")
      ->required()
      ->check(CLI::Range(1, 6));
  cmd_fiber->add_option("--jobs", fiber_jobs, "worker threads")->check(CLI::Range(1, 64));

  int qbar_max_n = 0;
  std::string qbar_grid = "default";
  int qbar_jobs = 1;
  CLI::App* cmd_qbar =
      app.add_subcommand("qbar-audit", "retraction lemma battery and jacobian audit on chains");
  cmd_qbar->add_option("--max-n", qbar_max_n, "maximal sequence width")
      ->required()
      ->check(CLI::Range(2, 7));
  cmd_qbar->add_option("--grid", qbar_grid, "'default' or a comma-separated rational grid");
  cmd_qbar->add_option("--jobs", qbar_jobs, "worker threads")->check(CLI::Range(1, 64));

  std::string nerve_file;
  int nerve_dim = 0;
  CLI::App* cmd_nerve =
      app.add_subcommand("nerve-check", "horn fillers and spine bijection of a nerve");
  cmd_nerve->add_option("file", nerve_file, "poset or category file")->required();
  cmd_nerve->add_option("--dim", nerve_dim, "horn sweep dimension")
      ->required()
      ->check(CLI::Range(1, 6));

  std::vector<const char*> argv;
  argv.push_back("stratcat");
  for (const std::string& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (cmd_homology->parsed())
      return emit(homology_lines(homology_target, homology_ring, homology_coeffs), out);

    if (cmd_cubes->parsed()) {
      FinitePoset poset = load_valid_poset(read_json_file(cubes_poset));
      std::vector<Rat> grid = grid_from_option(cubes_grid);
      std::vector<Task> tasks;
      for (const IncreasingSequence& seq : all_increasing_sequences(poset, cubes_max_len))
        tasks.push_back([seq, &grid] { return cube_lines_for(seq, grid); });
      return emit(run_tasks(tasks, cubes_jobs), out);
    }

    if (cmd_fiber->parsed()) {
      FinitePoset poset = load_valid_poset(read_json_file(fiber_poset));
      std::vector<Task> tasks;
      for (const IncreasingSequence& seq : all_increasing_sequences(poset, fiber_max_len))
        tasks.push_back([seq] { return fiber_lines_for(seq); });
      return emit(run_tasks(tasks, fiber_jobs), out);
    }

    if (cmd_qbar->parsed()) {
      std::vector<Rat> grid = grid_from_option(qbar_grid);
      std::vector<Task> tasks;
      for (int n = 2; n <= qbar_max_n; ++n)
        for (int band = 0; band + 1 <= n; ++band)
          tasks.push_back([n, band, &grid] { return qbar_lines_for(n, band, grid); });
      return emit(run_tasks(tasks, qbar_jobs), out);
    }

    return emit(nerve_lines(nerve_file, nerve_dim), out);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const schema_error& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace stratcat
