// screwmob command-line front end. Talks to the library exclusively through
// the C API in screwmob_c.h; exit codes mirror its status codes.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "screwmob/screwmob_c.h"

#include "CLI11.hpp"

namespace {

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { sm_string_free(s); }
  operator bool() const { return s != nullptr; }
};

bool write_file(const std::string& path, const char* content) {
  if (!content) return true;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  out << content;
  return true;
}

bool parse_range(const std::string& text, sm_options& opts) {
  std::istringstream in(text);
  char c1 = 0, c2 = 0;
  if (!(in >> opts.range_lo >> c1 >> opts.range_hi >> c2 >> opts.range_steps) ||
      c1 != ':' || c2 != ':' || !(in >> std::ws).eof()) {
    std::cerr << "error: --range expects LO:HI:STEPS\n";
    return false;
  }
  return true;
}

bool parse_section(const std::string& text, sm_options& opts) {
  std::istringstream in(text);
  std::string a, b;
  if (!std::getline(in, a, ',') || !std::getline(in, b)) {
    std::cerr << "error: --section expects xI,xJ (e.g. x1,x2)\n";
    return false;
  }
  auto index = [](const std::string& s, int& out) {
    if (s.size() < 2 || s[0] != 'x') return false;
    try {
      out = std::stoi(s.substr(1));
    } catch (...) {
      return false;
    }
    return out >= 1;
  };
  if (!index(a, opts.section_abscissa) || !index(b, opts.section_ordinate)) {
    std::cerr << "error: --section expects xI,xJ (e.g. x1,x2)\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local mobility and singularity analysis of multi-loop linkages"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string linkage_path;
  std::string out_dir = ".";
  sm_options opts;
  sm_options_init(&opts);
  std::string range_text, section_text;

  app.add_option("-f,--file", linkage_path, "Linkage JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("-o,--out", out_dir, "Output directory for artifacts");
  app.add_option("--order", opts.order, "Truncation / jet order");
  app.add_option("--k", opts.k, "Minor size for stratum commands (default rank+1)");
  app.add_option("--tol-rank", opts.tol_rank, "Relative rank tolerance");
  app.add_option("--tol-cone", opts.tol_cone, "Cone membership tolerance");
  app.add_option("--seed", opts.seed, "Sampling seed");
  app.add_option("--radius", opts.radius, "Sampling radius");
  app.add_option("--samples", opts.samples, "Sample count");
  app.add_option("--section", section_text, "Section variables, e.g. x1,x5");
  app.add_option("--range", range_text, "Sweep range LO:HI:STEPS");

  auto* cmd_rank = app.add_subcommand("rank", "Constraint Jacobian rank and kernel");
  auto* cmd_cone = app.add_subcommand("cone", "Kinematic tangent cone");
  auto* cmd_cone_stratum =
      app.add_subcommand("cone-stratum", "Tangent cone to the rank stratum");
  auto* cmd_cspace =
      app.add_subcommand("cspace", "Truncated c-space approximation and its local dimension");
  auto* cmd_stratum =
      app.add_subcommand("stratum", "Truncated rank-stratum approximation and its local dimension");
  auto* cmd_classify = app.add_subcommand("classify", "Full singularity classification");
  auto* cmd_section = app.add_subcommand("section", "2-D coordinate sweep of the c-space");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!range_text.empty() && !parse_range(range_text, opts)) return 2;
  if (!section_text.empty() && !parse_section(section_text, opts)) return 2;

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory " << out_dir << "\n";
    return 2;
  }
  auto path_in = [&](const char* name) {
    return (std::filesystem::path(out_dir) / name).string();
  };

  OwnedString load_err;
  sm_linkage* lk = sm_linkage_load(linkage_path.c_str(), &load_err.s);
  if (!lk) {
    std::cerr << "error: " << (load_err ? load_err.s : "load failed") << "\n";
    return 2;
  }

  OwnedString json_out, extra;
  int rc = SM_ERR_INTERNAL;
  bool ok = true;

  if (cmd_rank->parsed()) {
    rc = sm_rank(lk, &opts, &json_out.s);
  } else if (cmd_cone->parsed()) {
    rc = sm_cone(lk, &opts, &json_out.s);
  } else if (cmd_cone_stratum->parsed()) {
    rc = sm_cone_stratum(lk, &opts, &json_out.s);
  } else if (cmd_cspace->parsed()) {
    rc = sm_cspace(lk, &opts, &json_out.s, &extra.s);
    ok = write_file(path_in("system.poly"), extra.s) && ok;
  } else if (cmd_stratum->parsed()) {
    rc = sm_stratum(lk, &opts, &json_out.s, &extra.s);
    ok = write_file(path_in("system.poly"), extra.s) && ok;
  } else if (cmd_classify->parsed()) {
    rc = sm_classify(lk, &opts, &json_out.s, &extra.s);
    ok = write_file(path_in("report.txt"), extra.s) && ok;
    if (extra) std::cout << extra.s;
  } else if (cmd_section->parsed()) {
    rc = sm_section(lk, &opts, &json_out.s, &extra.s);
    ok = write_file(path_in("section.csv"), extra.s) && ok;
  }

  sm_linkage_free(lk);

  if (json_out) {
    if (!cmd_classify->parsed()) std::cout << json_out.s;
    ok = write_file(path_in("report.json"), json_out.s) && ok;
  }
  if (!ok && rc == SM_OK) rc = SM_ERR_INTERNAL;
  if (rc == SM_ERR_INCONCLUSIVE)
    std::cerr << "note: analysis inconclusive at the requested order/settings\n";
  else if (rc != SM_OK)
    std::cerr << "error: command failed (code " << rc << ")\n";
  return rc;
}
