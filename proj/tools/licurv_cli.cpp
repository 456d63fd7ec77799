// licurv command-line front end. Talks to the library only through licurv.h.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "licurv/licurv.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Failure {
  std::string message;
};

struct MetricDeleter {
  void operator()(licurv_metric* m) const { licurv_metric_free(m); }
};
struct ChainDeleter {
  void operator()(licurv_chain* c) const { licurv_chain_free(c); }
};
struct AlgebraDeleter {
  void operator()(licurv_algebra* a) const { licurv_algebra_free(a); }
};
struct StringDeleter {
  void operator()(char* s) const { licurv_string_free(s); }
};

using MetricPtr = std::unique_ptr<licurv_metric, MetricDeleter>;
using OwnedString = std::unique_ptr<char, StringDeleter>;

void check(licurv_status status) {
  if (status != LICURV_OK) {
    std::string message = licurv_last_error();
    if (message.empty()) message = licurv_status_name(status);
    throw Failure{message};
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"IoError: cannot read '" + path + "'"};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{"IoError: cannot write '" + path + "'"};
  out << text;
  if (!out) throw Failure{"IoError: write failed for '" + path + "'"};
}

std::vector<double> parse_list(const std::string& text, size_t expected, const char* flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{std::string("InvalidArgument: ") + flag + " expects comma-separated numbers, got '" + text + "'"};
    }
  }
  if (values.size() != expected) {
    throw Failure{std::string("InvalidArgument: ") + flag + " expects " + std::to_string(expected) + " values"};
  }
  return values;
}

// Metric selection shared by classify, report and crosscheck.
struct MetricSource {
  std::string input;
  std::string algebra;
  std::string lambdas;
  std::string e0;

  void attach(CLI::App* app) {
    app->add_option("-i,--input", input, "Metric JSON file ('-' for stdin)");
    app->add_option("--algebra", algebra, "so3 or u1su2 (with --lambdas)")->check(CLI::IsMember({"so3", "u1su2"}));
    app->add_option("--lambdas", lambdas, "l1,l2,l3: square roots of the metric eigenvalues");
    app->add_option("--e0", e0, "a,b,c,d: E0 components (u1su2 only)");
  }

  bool from_lambdas() const { return input.empty(); }

  void validate() const {
    if (!input.empty() && (!algebra.empty() || !lambdas.empty() || !e0.empty())) {
      throw Failure{"InvalidArgument: use either --input or --algebra/--lambdas"};
    }
    if (input.empty() && (algebra.empty() || lambdas.empty())) {
      throw Failure{"InvalidArgument: a metric needs --input, or --algebra with --lambdas"};
    }
    if (!e0.empty() && algebra != "u1su2") throw Failure{"InvalidArgument: --e0 requires --algebra u1su2"};
  }

  MetricPtr load() const {
    validate();
    licurv_metric* raw = nullptr;
    if (!input.empty()) {
      check(licurv_metric_from_json(read_input(input).c_str(), &raw));
    } else {
      const auto l = parse_list(lambdas, 3, "--lambdas");
      std::optional<std::vector<double>> comps;
      if (!e0.empty()) comps = parse_list(e0, 4, "--e0");
      check(licurv_metric_from_lambdas(algebra.c_str(), l.data(), comps ? comps->data() : nullptr, &raw));
    }
    return MetricPtr(raw);
  }
};

struct Range {
  double min;
  double max;
  double step;
};

Range parse_range(const std::string& text, const char* flag) {
  const auto v = parse_list(text, 3, flag);
  return {v[0], v[1], v[2]};
}

std::string take(char* s) {
  OwnedString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature of left-invariant metrics on compact Lie groups"};
  app.set_version_flag("--version", std::string("licurv ") + licurv_version());
  app.require_subcommand(1);

  double eps = 1e-9;
  int samples = 2000;
  std::uint64_t seed = 0;
  std::string output;

  auto* classify = app.add_subcommand("classify", "Closed-form nonnegative-curvature verdict");
  MetricSource classify_src;
  classify_src.attach(classify);
  classify->add_option("--eps", eps, "Tolerance on the normalized inequality values")->check(CLI::PositiveNumber);
  classify->add_option("-o,--output", output, "Output file (default stdout)");

  auto* report = app.add_subcommand("report", "Curvature report at the identity");
  MetricSource report_src;
  report_src.attach(report);
  report->add_option("--samples", samples, "Random planes for the sectional oracle")->check(CLI::Range(1, 100000000));
  report->add_option("--seed", seed, "Sampling seed");
  report->add_option("-o,--output", output, "Output file (default stdout)");

  auto* scan = app.add_subcommand("scan", "so(3) region scan with l3 = 1, CSV output");
  std::string l1_range = "0.01,2,0.01";
  std::string l2_range = "0.01,2,0.01";
  std::string meta_path;
  scan->add_option("--l1-range", l1_range, "min,max,step")->capture_default_str();
  scan->add_option("--l2-range", l2_range, "min,max,step")->capture_default_str();
  scan->add_option("--eps", eps, "Boundary tolerance")->check(CLI::PositiveNumber);
  scan->add_option("-o,--output", output, "CSV file (default stdout)");
  scan->add_option("--meta", meta_path, "Grid metadata JSON (default <output>.meta.json when --output is a file)");

  auto* cheeger = app.add_subcommand("cheeger", "Apply a Cheeger deformation chain");
  std::string chain_path;
  cheeger->add_option("-i,--input", chain_path, "Chain JSON file ('-' for stdin)")->required();
  cheeger->add_option("-o,--output", output, "Metric JSON file (default stdout)");

  auto* audit = app.add_subcommand("audit", "Classifier vs sampling-oracle audit");
  std::string group = "so3";
  int points = 1000;
  double margin = 1e-6;
  audit->add_option("--group", group, "so3 or u2")->check(CLI::IsMember({"so3", "u2"}))->capture_default_str();
  audit->add_option("--points", points, "Random parameter points")->check(CLI::Range(1, 100000000))->capture_default_str();
  audit->add_option("--margin", margin, "Classifier margin below which disagreements are indeterminate")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  audit->add_option("--samples", samples, "Random planes per point")->check(CLI::Range(1, 100000000));
  audit->add_option("--seed", seed, "Audit seed");
  audit->add_option("-o,--output", output, "Report JSON file (default stdout)");

  auto* crosscheck = app.add_subcommand("crosscheck", "Milnor vs Puttmann sectional curvature agreement");
  std::string cc_algebra;
  std::string cc_input;
  int cc_metrics = 100;
  int cc_pairs = 100;
  double cc_tolerance = 1e-9;
  crosscheck->add_option("--algebra", cc_algebra, "Random metrics on so3 or u1su2")
      ->check(CLI::IsMember({"so3", "u1su2"}));
  crosscheck->add_option("-i,--input", cc_input, "Single metric JSON file instead of random metrics");
  crosscheck->add_option("--metrics", cc_metrics, "Random metrics")->check(CLI::Range(1, 100000000))->capture_default_str();
  crosscheck->add_option("--pairs", cc_pairs, "Planes per metric")->check(CLI::Range(1, 100000000))->capture_default_str();
  crosscheck->add_option("--tolerance", cc_tolerance, "Pass threshold")->check(CLI::PositiveNumber)->capture_default_str();
  crosscheck->add_option("--seed", seed, "Seed");
  crosscheck->add_option("-o,--output", output, "Result JSON file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*classify) {
      licurv_verdict verdict = LICURV_VIOLATED;
      char* json = nullptr;
      if (classify_src.from_lambdas() && classify_src.algebra == "so3") {
        classify_src.validate();
        const auto l = parse_list(classify_src.lambdas, 3, "--lambdas");
        check(licurv_classify_so3(l[0], l[1], l[2], eps, &verdict, &json));
      } else {
        const auto metric = classify_src.load();
        check(licurv_classify_metric(metric.get(), eps, &verdict, &json));
      }
      write_output(output, take(json));
      return verdict == LICURV_VIOLATED ? kExitFailed : kExitOk;
    }

    if (*report) {
      const auto metric = report_src.load();
      char* json = nullptr;
      check(licurv_report_json(metric.get(), samples, seed, &json));
      write_output(output, take(json));
      return kExitOk;
    }

    if (*scan) {
      const Range r1 = parse_range(l1_range, "--l1-range");
      const Range r2 = parse_range(l2_range, "--l2-range");
      char* csv = nullptr;
      check(licurv_scan_so3_csv(r1.min, r1.max, r1.step, r2.min, r2.max, r2.step, eps, &csv));
      write_output(output, take(csv));
      if (meta_path.empty() && !output.empty() && output != "-") meta_path = output + ".meta.json";
      if (!meta_path.empty()) {
        std::ostringstream meta;
        meta << "{\n  \"l3\": 1,\n"
             << "  \"l1_range\": [" << format_double(r1.min) << ", " << format_double(r1.max) << ", "
             << format_double(r1.step) << "],\n"
             << "  \"l2_range\": [" << format_double(r2.min) << ", " << format_double(r2.max) << ", "
             << format_double(r2.step) << "],\n"
             << "  \"eps\": " << format_double(eps) << ",\n"
             << "  \"version\": \"" << licurv_version() << "\"\n}\n";
        write_output(meta_path, meta.str());
      }
      return kExitOk;
    }

    if (*cheeger) {
      licurv_chain* raw = nullptr;
      check(licurv_chain_from_json(read_input(chain_path).c_str(), &raw));
      std::unique_ptr<licurv_chain, ChainDeleter> chain(raw);
      licurv_metric* deformed = nullptr;
      check(licurv_chain_deform(chain.get(), &deformed));
      MetricPtr metric(deformed);
      char* json = nullptr;
      check(licurv_metric_to_json(metric.get(), &json));
      write_output(output, take(json));
      return kExitOk;
    }

    if (*audit) {
      int passed = 0;
      char* json = nullptr;
      check(licurv_audit_json(group.c_str(), points, seed, margin, samples, &passed, &json));
      write_output(output, take(json));
      return passed ? kExitOk : kExitFailed;
    }

    if (*crosscheck) {
      if (cc_input.empty() == cc_algebra.empty()) {
        throw Failure{"InvalidArgument: crosscheck needs exactly one of --algebra or --input"};
      }
      double worst = 0.0;
      int n_metrics = 1;
      if (!cc_input.empty()) {
        licurv_metric* raw = nullptr;
        check(licurv_metric_from_json(read_input(cc_input).c_str(), &raw));
        MetricPtr metric(raw);
        check(licurv_crosscheck(metric.get(), cc_pairs, seed, &worst));
      } else {
        licurv_algebra* raw = nullptr;
        check(cc_algebra == "so3" ? licurv_algebra_so3(&raw) : licurv_algebra_u1su2(&raw));
        std::unique_ptr<licurv_algebra, AlgebraDeleter> alg(raw);
        check(licurv_crosscheck_random(alg.get(), cc_metrics, cc_pairs, seed, &worst));
        n_metrics = cc_metrics;
      }
      const bool ok = worst < cc_tolerance;
      std::ostringstream out;
      out << "{\n  \"max_discrepancy\": " << format_double(worst) << ",\n  \"metrics\": " << n_metrics
          << ",\n  \"pairs\": " << cc_pairs << ",\n  \"seed\": " << seed
          << ",\n  \"tolerance\": " << format_double(cc_tolerance) << ",\n  \"passed\": " << (ok ? "true" : "false")
          << "\n}\n";
      write_output(output, out.str());
      return ok ? kExitOk : kExitFailed;
    }
  } catch (const Failure& f) {
    std::cerr << "licurv: " << f.message << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "licurv: Internal: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
