// End-to-end checks of the command-line driver: exit codes, artifact layout,
// and byte-identical reruns. The binary path arrives as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

std::string g_binary;
std::filesystem::path g_dir;

int run(const std::string& args) {
  const std::string cmd = g_binary + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void put(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p);
  os << text;
}

}  // namespace

TEST_CASE("spectrum: catalog verdicts and byte-identical reruns") {
  const auto frame = g_dir / "singular.json";
  put(frame, "{\"manifold\": \"Sphere3\", \"U\": [1.5874010519681994, 0, 0, 0, "
             "-0.7937005259840998, 0, 0, 0, -0.7937005259840998]}");
  CHECK(run("spectrum --frame " + frame.string() + " --out " + (g_dir / "sp1").string()) == 0);
  const std::string summary = slurp(g_dir / "sp1" / "summary.csv");
  CHECK(summary.find("Singular") != std::string::npos);
  CHECK(summary.find("8,") != std::string::npos);

  // identical rerun (different thread budget) reproduces the CSV bytes
  const std::string env = "FUETERLAB_THREADS=1 ";
  const std::string cmd = env + g_binary + " spectrum --frame " + frame.string() + " --out " +
                          (g_dir / "sp2").string() + " > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(slurp(g_dir / "sp1" / "spectrum.csv") == slurp(g_dir / "sp2" / "spectrum.csv"));
  CHECK(slurp(g_dir / "sp1" / "summary.csv") == slurp(g_dir / "sp2" / "summary.csv"));

  // refusing to overwrite without --force
  CHECK(run("spectrum --frame " + frame.string() + " --out " + (g_dir / "sp1").string()) == 1);
  CHECK(run("spectrum --frame " + frame.string() + " --out " + (g_dir / "sp1").string() +
            " --force") == 0);
}

TEST_CASE("exit codes: input error and uncertified truncation") {
  CHECK(run("spectrum --frame " + (g_dir / "missing.json").string() + " --out " +
            (g_dir / "x1").string()) == 1);
  const auto bad = g_dir / "bad.json";
  put(bad, "{\"manifold\": \"nowhere\"}");
  CHECK(run("spectrum --frame " + bad.string() + " --out " + (g_dir / "x2").string()) == 1);
  const auto std_frame = g_dir / "std.json";
  put(std_frame, "{\"manifold\": \"Sphere3\"}");
  CHECK(run("spectrum --frame " + std_frame.string() + " --out " + (g_dir / "x3").string() +
            " --jmax 1") == 2);
}

TEST_CASE("specflow produces curves, crossings and the flow integer") {
  const auto path = g_dir / "sweep.json";
  put(path, "{\"kind\": \"s3_singular_sweep\", \"s0\": 0.0, \"s1\": 1.2}");
  CHECK(run("specflow --path " + path.string() + " --out " + (g_dir / "fl").string() +
            " --jmax 1 --grid 48") == 0);
  CHECK(std::filesystem::exists(g_dir / "fl" / "curves.csv"));
  CHECK(std::filesystem::exists(g_dir / "fl" / "crossings.json"));
  CHECK(std::filesystem::exists(g_dir / "fl" / "curves_0.svg"));
  const std::string cross = slurp(g_dir / "fl" / "crossings.json");
  CHECK(cross.find("\"signature\": -4") != std::string::npos);
  const std::string svg = slurp(g_dir / "fl" / "curves_0.svg");
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("http") != std::string::npos);  // only the xmlns, no external refs
  CHECK(svg.find("href") == std::string::npos);
}

TEST_CASE("verify commands pass on the catalog") {
  const auto std_frame = g_dir / "std2.json";
  put(std_frame, "{\"manifold\": \"Sphere3\"}");
  CHECK(run("verify --identity duality --frame " + std_frame.string() + " --out " +
            (g_dir / "v1").string()) == 0);
  CHECK(run("verify --identity nonsense --frame " + std_frame.string() + " --out " +
            (g_dir / "v2").string()) == 1);
}

TEST_CASE("floer: the degenerate family exits 4") {
  const auto prob = g_dir / "degenerate.json";
  put(prob, "{\"frame\": {\"manifold\": \"Torus3\"}, \"hamiltonian\": {\"ncomp\": 4, "
            "\"terms\": []}, \"grid\": 4, \"random_starts\": 0}");
  CHECK(run("floer --problem " + prob.string() + " --out " + (g_dir / "fd").string()) == 4);
}

TEST_CASE("ample property report") {
  CHECK(run("ample --mode equivalence --samples 200 --out " + (g_dir / "am").string()) == 0);
  const std::string csv = slurp(g_dir / "am" / "equivalence.csv");
  CHECK(csv.find("instance,det_sign,oracle,agree") != std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <binary>\n");
    return 1;
  }
  g_binary = argv[1];
  g_dir = std::filesystem::temp_directory_path() / "fueterlab-cli-test";
  std::filesystem::remove_all(g_dir);
  std::filesystem::create_directories(g_dir);
  doctest::Context ctx;
  const int rc = ctx.run();
  std::filesystem::remove_all(g_dir);
  return rc;
}
