// Command-line front end: subgroup catalog construction, orbit projection,
// array library generation, planar dihedral demos, and capsid fitting.
//
// Exit codes: 0 success, 1 usage error, 2 verification or catalog mismatch,
// 3 input parse failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orbshell/orbshell.hpp"

namespace fs = std::filesystem;
using namespace orbshell;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int64_t> parse_ints(const std::string& text) {
  std::vector<int64_t> out;
  std::string field;
  auto flush = [&]() {
    if (field.empty()) return;
    try {
      size_t used = 0;
      out.push_back(std::stoll(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw ParseError("bad integer '" + field + "' in '" + text + "'");
    }
    field.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t')
      flush();
    else
      field += ch;
  }
  flush();
  if (out.empty()) throw ParseError("empty coordinate list '" + text + "'");
  return out;
}

template <size_t N>
std::array<int64_t, N> parse_fixed(const std::string& text) {
  std::vector<int64_t> v = parse_ints(text);
  if (v.size() != N)
    throw ParseError("expected " + std::to_string(N) + " coordinates, got " +
                     std::to_string(v.size()));
  std::array<int64_t, N> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
  check(out.good(), "failed writing " + path.string());
  std::cerr << "wrote " << path.string() << "\n";
}

const CatalogEntry& entry_by_label(const Catalog& cat,
                                   const std::string& label) {
  for (const CatalogEntry& e : cat.entries)
    if (e.label == label) return e;
  throw UsageError("unknown group label '" + label +
                   "' (expected G1 .. G13)");
}

int cmd_classify(const std::string& outdir, bool appendix_only,
                 bool ambient_check) {
  if (!appendix_only) std::cerr << "running subgroup discovery...\n";
  Catalog cat = build_catalog(/*from_appendix=*/appendix_only);
  if (ambient_check)
    check(cat.entries.back().group.order() == 46080,
          "ambient hyperoctahedral order");
  write_file(fs::path(outdir) / "catalog.json", catalog_json(cat).dump(2) + "\n");
  std::cout << cat.entries.size() << " groups";
  for (const CatalogEntry& e : cat.entries)
    std::cout << " " << e.label << ":" << e.group.order();
  std::cout << "\n";
  return 0;
}

int cmd_orbit(const std::string& outdir, const std::string& label,
              const std::string& seed_text, int digits, bool off,
              double pdb_scale) {
  Vec6 seed = parse_fixed<6>(seed_text);
  IcosaEmbedding emb = build_embedding();
  Catalog cat = build_catalog(true);
  const CatalogEntry& e = entry_by_label(cat, label);
  PointArray pa = build_point_array(e.group, seed, emb, e.label);
  write_file(fs::path(outdir) / "orbit.json",
             array_json(pa, digits).dump(2) + "\n");
  write_file(fs::path(outdir) / "orbit.csv", array_csv(pa));
  if (off)
    for (size_t k = 1; k <= pa.layers.size(); ++k) {
      char name[32];
      std::snprintf(name, sizeof(name), "layer_%02zu.off", k);
      write_file(fs::path(outdir) / name, layer_off(pa, k));
    }
  if (pdb_scale > 0)
    write_file(fs::path(outdir) / "orbit.pdb", array_pdb(pa, pdb_scale));
  std::cout << pa.total_points << " points in " << pa.layers.size()
            << " layers\n";
  return 0;
}

int cmd_library(const std::string& outdir, int N, unsigned threads) {
  IcosaEmbedding emb = build_embedding();
  Catalog cat = build_catalog(true);
  std::cerr << "building library at cutoff " << N << "...\n";
  Library lib = build_library(cat, emb, N, threads);
  write_file(fs::path(outdir) / "library.json", library_json(lib).dump(2) + "\n");
  std::cout << lib.entries.size() << " distinct arrays ("
            << lib.arrays_before_dedup << " before dedup), fundamental seeds "
            << lib.rep_count << "\n";
  return 0;
}

int cmd_dihedral(const std::string& outdir, int n,
                 const std::string& subgroup, const std::string& seed_text,
                 int digits) {
  if (subgroup == "lattice") {
    if (n != 5)
      throw UsageError("the lattice chain is defined for --n 5 only");
    Vec4 seed = parse_fixed<4>(seed_text);
    std::cerr << "building the rank-4 lattice chain...\n";
    A4Chain chain = a4_case();
    Json j;
    j["n"] = 5;
    j["seed"] = seed;
    j["panels"] = Json::array();
    struct Panel {
      const char* name;
      const FiniteGroup<Mat4>* g;
    } panels[] = {{"H", &chain.h}, {"K", &chain.k}, {"Lambda", &chain.lambda}};
    for (const Panel& p : panels) {
      A4Orbit orb = a4_orbit(*p.g, seed);
      j["panels"].push_back(a4_json(orb, p.name));
      write_file(fs::path(outdir) / (std::string("planar_") + p.name + ".csv"),
                 a4_csv(orb));
      std::cout << p.name << ": " << orb.total_points << " points in "
                << orb.layers.size() << " layers\n";
    }
    write_file(fs::path(outdir) / "planar.json", j.dump(2) + "\n");
    return 0;
  }
  if (subgroup != "dihedral" && subgroup != "holomorph")
    throw UsageError("--subgroup must be dihedral, holomorph or lattice");
  std::vector<int64_t> coeffs = parse_ints(seed_text);
  if (static_cast<int>(coeffs.size()) != n)
    throw ParseError("seed needs " + std::to_string(n) + " coefficients");
  HolGroup hol = hol_group(n);
  std::vector<HolElement> maps =
      subgroup == "dihedral" ? hol_dihedral(hol) : hol.elements;
  PlanarOrbit po = lift_and_orbit(n, maps, CycInt(n, coeffs));
  write_file(fs::path(outdir) / "planar.json",
             planar_json(po, subgroup, digits).dump(2) + "\n");
  write_file(fs::path(outdir) / "planar.csv", planar_csv(po));
  std::cout << po.total_points << " points in " << po.layers.size()
            << " layers\n";
  return 0;
}

int cmd_fit(const std::string& outdir, const std::string& pdb_path, int N,
            double r_tilde, double radial_fraction, double linkage_cutoff,
            bool no_expand, unsigned threads, bool overlay) {
  IcosaEmbedding emb = build_embedding();
  Catalog cat = build_catalog(true);
  std::cerr << "reading " << pdb_path << "...\n";
  CapsidModel model =
      ingest_pdb(pdb_path, !no_expand, rotation_matrices(emb));
  surface_clusters(model, radial_fraction, linkage_cutoff);
  std::cerr << model.calpha.size() << " alpha carbons, "
            << model.clusters.size() << " surface clusters\n";
  std::cerr << "building library at cutoff " << N << "...\n";
  Library lib = build_library(cat, emb, N, threads);
  std::cerr << "ranking " << lib.entries.size() << " arrays...\n";
  std::vector<FitResult> results = rank_library(lib, model, r_tilde);
  write_file(fs::path(outdir) / "fit.json",
             fit_json(results, model).dump(2) + "\n");
  write_file(fs::path(outdir) / "fit.csv", fit_csv(results));
  size_t selected = 0;
  for (const FitResult& fr : results) selected += fr.selected;
  std::cout << selected << " of " << results.size() << " arrays selected\n";
  if (overlay && !results.empty() && results.front().selected) {
    const FitResult& best = results.front();
    for (const LibraryEntry& le : lib.entries)
      if (le.array.group_label == best.group_label &&
          le.array.seed == best.seed) {
        write_file(fs::path(outdir) / "overlay.pdb",
                   array_pdb(le.array, best.scale));
        break;
      }
  }
  return 0;
}

int cmd_verify(unsigned threads) {
  IcosaEmbedding emb = build_embedding();
  std::cout << "ok: projection and intertwining identities\n";
  verify_h3_structure(emb);
  std::cout << "ok: reflection extension, inversion, axis census 12/20/30\n";
  Catalog cat = build_catalog(true);
  std::cout << "ok: appendix generators close to the published orders\n";
  std::cerr << "running subgroup discovery...\n";
  build_catalog(false);
  std::cout << "ok: discovery reproduces the catalog\n";

  Library s1 = build_library(cat, emb, 1, threads);
  size_t arrays = 0;
  for (const LibraryEntry& le : s1.entries) {
    Theorem1Report rep = verify_theorem1(
        entry_by_label(cat, le.array.group_label).group, emb.icosa,
        le.array.seed, emb);
    check(rep.transversal_independent && rep.layers_t1_closed &&
              rep.layers_negation_closed && rep.criterion_matches &&
              rep.equal_cardinalities,
          "layer correspondence for " + le.array.group_label);
    ++arrays;
  }
  std::cout << "ok: layer correspondence over " << arrays
            << " cutoff-1 arrays\n";

  uint64_t lcg = 0x5eed;
  for (int t = 0; t < 10; ++t) {
    std::vector<int64_t> coeffs(5);
    for (int64_t& c : coeffs) {
      lcg = lcg * 6364136223846793005ull + 1442695040888963407ull;
      c = static_cast<int64_t>((lcg >> 33) % 9) - 4;
    }
    if (std::all_of(coeffs.begin(), coeffs.end(),
                    [](int64_t c) { return c == 0; }))
      coeffs[0] = 1;
    PlanarChainReport rep = verify_planar_chain(CycInt(5, coeffs), lcg);
    check(rep.one_radius_per_coset && rep.transversal_independent &&
              rep.criterion_matches && rep.equal_cardinalities,
          "planar chain properties");
  }
  std::cout << "ok: planar chain properties over 10 random seeds\n";

  a4_case();
  std::cout << "ok: rank-4 lattice chain and holomorph identification\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbshell: nested point arrays from projected lattice orbits"};
  app.require_subcommand(1);
  app.set_config("--config");

  std::string outdir = "out";
  int digits = 12;
  unsigned threads = 0;
  app.add_option("--output", outdir, "output directory")->capture_default_str();
  app.add_option("--digits", digits, "decimal digits in exports")
      ->capture_default_str();
  app.add_option("--threads", threads, "worker threads (0 = hardware)")
      ->capture_default_str();

  CLI::App* classify = app.add_subcommand(
      "classify", "build the subgroup catalog between the rotation group and "
                  "the full signed permutation group");
  classify->fallthrough();
  bool appendix_only = false, ambient_check = false;
  classify->add_flag("--from-appendix-only", appendix_only,
                     "skip the discovery pipeline, use published generators");
  classify->add_flag("--ambient-check", ambient_check,
                     "assert the ambient group order 46080");

  CLI::App* orbit = app.add_subcommand(
      "orbit", "project the orbit of one lattice seed into nested layers");
  orbit->fallthrough();
  std::string group_label, seed_text;
  bool off = false;
  double pdb_scale = 0;
  orbit->add_option("--group", group_label, "catalog label, e.g. G4")
      ->required();
  orbit->add_option("--seed", seed_text, "six integers, e.g. 0,0,1,1,2,1")
      ->required();
  orbit->add_flag("--off", off, "also write per-layer convex hull meshes");
  orbit->add_option("--pdb-scale", pdb_scale,
                    "also write HETATM pseudo-atoms at this scale (angstrom)");

  CLI::App* library = app.add_subcommand(
      "library", "generate all distinct arrays up to a coordinate cutoff");
  library->fallthrough();
  int N = 2;
  library->add_option("--N", N, "seed coordinate cutoff")
      ->capture_default_str();

  CLI::App* dihedral = app.add_subcommand(
      "dihedral", "planar orbits of cyclotomic integers under dihedral, "
                  "holomorph, or rank-4 lattice symmetry");
  dihedral->fallthrough();
  int dn = 5;
  std::string subgroup = "holomorph";
  std::string dseed = "1,2,4,3";
  dihedral->add_option("--n", dn, "cyclotomic order")->capture_default_str();
  dihedral->add_option("--subgroup", subgroup,
                       "dihedral | holomorph | lattice")
      ->capture_default_str();
  dihedral->add_option("--seed", dseed, "integer coefficients")
      ->capture_default_str();

  CLI::App* fit = app.add_subcommand(
      "fit", "rank library arrays against a capsid structure");
  fit->fallthrough();
  std::string pdb_path;
  double r_tilde = 10.0, radial_fraction = 0.95, linkage_cutoff = 8.0;
  bool no_expand = false, overlay = false;
  fit->add_option("--pdb", pdb_path, "PDB file with ATOM records")->required();
  fit->add_option("--N", N, "library cutoff")->capture_default_str();
  fit->add_option("--r-tilde", r_tilde, "sphere radius in angstrom")
      ->capture_default_str();
  fit->add_option("--radial-fraction", radial_fraction,
                  "surface shell lower bound as a fraction of the max radius")
      ->capture_default_str();
  fit->add_option("--cutoff", linkage_cutoff,
                  "single-linkage clustering cutoff in angstrom")
      ->capture_default_str();
  fit->add_flag("--no-expand", no_expand,
                "input already contains the full particle");
  fit->add_flag("--overlay", overlay,
                "write the best selected array as HETATM pseudo-atoms");

  app.add_subcommand("verify", "run the invariant suites")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (classify->parsed())
      return cmd_classify(outdir, appendix_only, ambient_check);
    if (orbit->parsed())
      return cmd_orbit(outdir, group_label, seed_text, digits, off, pdb_scale);
    if (library->parsed()) return cmd_library(outdir, N, threads);
    if (dihedral->parsed())
      return cmd_dihedral(outdir, dn, subgroup, dseed, digits);
    if (fit->parsed())
      return cmd_fit(outdir, pdb_path, N, r_tilde, radial_fraction,
                     linkage_cutoff, no_expand, threads, overlay);
    return cmd_verify(threads);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const EmptyModel& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 2;
  }
}
