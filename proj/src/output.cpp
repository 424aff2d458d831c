#include "fracburgers/output.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "fracburgers/errors.hpp"
#include "fracburgers/spectral.hpp"

namespace fracburgers {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'");
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  out.close();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

double energy(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return s / static_cast<double>(f.size());
}

ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string git_blob_sha1(const std::string& content) {
  const std::string header = "blob " + std::to_string(content.size()) + '\0';
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw IoError("hash context allocation failed");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                  EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, md, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw IoError("SHA-1 computation failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return os.str();
}

std::string format_snapshot_rows(const Field& f) {
  std::string s;
  const TorusGrid& g = f.grid();
  const std::string t = g17(f.time());
  for (std::size_t i = 0; i < f.size(); ++i) {
    s += t;
    s += ',';
    s += g17(g.node(static_cast<std::ptrdiff_t>(i)));
    s += ',';
    s += g17(f[i]);
    s += '\n';
  }
  return s;
}

SnapshotWriter::SnapshotWriter(const fs::path& dir) : path_(dir / "snapshots.csv") {
  ensure_dir(dir);
  out_.open(path_, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("cannot write '" + path_.string() + "'");
  out_ << "t,x,u\n";
}

void SnapshotWriter::append(const Field& f) {
  out_ << format_snapshot_rows(f);
  if (!out_) throw IoError("write to '" + path_.string() + "' failed");
}

fs::path SnapshotWriter::finish() {
  out_.close();
  if (!out_) throw IoError("write to '" + path_.string() + "' failed");
  return path_;
}

void write_manifest(const Trajectory& traj, const fs::path& dir, const ordered_json& config,
                    const ordered_json& extra) {
  const std::string csv = read_text(dir / "snapshots.csv");
  ordered_json m;
  m["config"] = config;
  m["snapshots_csv"] = {{"file", "snapshots.csv"}, {"git_blob_sha1", git_blob_sha1(csv)}};
  m["grid"] = {{"n_points", traj.grid().size()}, {"period", traj.grid().period()}};
  ordered_json rows = ordered_json::array();
  for (const Field& f : traj.snapshots()) {
    rows.push_back({{"t", f.time()}, {"min", f.min()}, {"max", f.max()}, {"energy", energy(f)}});
  }
  m["snapshots"] = rows;
  for (const auto& [k, v] : extra.items()) m[k] = v;
  write_text(dir / "manifest.json", m.dump(2) + "\n");
}

void write_snapshots(const Trajectory& traj, const fs::path& dir, const ordered_json& config) {
  SnapshotWriter w(dir);
  for (const Field& f : traj.snapshots()) w.append(f);
  w.finish();
  write_manifest(traj, dir, config);
}

void write_diagnostics(const Trajectory& traj, const fs::path& dir) {
  ensure_dir(dir);
  std::string s = "t,min,max,osc,mean,energy\n";
  for (const Field& f : traj.snapshots()) {
    s += g17(f.time()) + ',' + g17(f.min()) + ',' + g17(f.max()) + ',' + g17(f.max() - f.min()) + ',' +
         g17(f.mean()) + ',' + g17(energy(f)) + '\n';
  }
  write_text(dir / "diagnostics.csv", s);
}

void write_spectrum(const Field& f, const fs::path& dir) {
  ensure_dir(dir);
  const SpectrumView spec = dft(f);
  std::string s = "k,magnitude\n";
  for (std::size_t k = 0; k <= f.size() / 2; ++k) {
    s += std::to_string(k) + ',' + g17(spec.magnitude(k)) + '\n';
  }
  write_text(dir / "spectrum.csv", s);
}

ordered_json verdicts_to_json(const std::vector<Verdict>& verdicts) {
  ordered_json arr = ordered_json::array();
  for (const Verdict& v : verdicts) {
    ordered_json measured = ordered_json::object();
    for (const auto& [k, x] : v.measured) measured[k] = number_or_null(x);
    ordered_json e;
    e["name"] = v.name;
    e["pass"] = v.pass;
    e["measured"] = measured;
    e["target"] = number_or_null(v.target);
    e["tolerance"] = number_or_null(v.tolerance);
    e["details"] = v.details;
    arr.push_back(e);
  }
  return arr;
}

bool write_report(const std::vector<Verdict>& verdicts, const fs::path& dir) {
  ensure_dir(dir);
  write_text(dir / "report.json", verdicts_to_json(verdicts).dump(2) + "\n");
  for (const Verdict& v : verdicts) {
    if (!v.pass) return false;
  }
  return true;
}

void emit_plot_script(PlotKind kind, const fs::path& dir) {
  ensure_dir(dir);
  std::string py =
      "# Plots for the files in this directory. Requires numpy and matplotlib.\n"
      "import csv\n"
      "import json\n"
      "import os\n"
      "\n"
      "import matplotlib\n"
      "matplotlib.use(\"Agg\")\n"
      "import matplotlib.pyplot as plt\n"
      "import numpy as np\n"
      "\n"
      "HERE = os.path.dirname(os.path.abspath(__file__))\n"
      "\n"
      "\n"
      "def table(name):\n"
      "    with open(os.path.join(HERE, name), newline=\"\") as fh:\n"
      "        rows = list(csv.DictReader(fh))\n"
      "    return {k: np.array([float(r[k]) for r in rows]) for k in rows[0]}\n"
      "\n";
  if (kind == PlotKind::Trajectory) {
    for (const char* f : {"snapshots.csv", "diagnostics.csv", "spectrum.csv"}) {
      if (!fs::exists(dir / f)) throw IoError(std::string("plot script needs ") + f);
    }
    py +=
        "snap = table(\"snapshots.csv\")\n"
        "diag = table(\"diagnostics.csv\")\n"
        "spec = table(\"spectrum.csv\")\n"
        "\n"
        "# solution waterfall\n"
        "fig, ax = plt.subplots()\n"
        "times = np.unique(snap[\"t\"])\n"
        "for t in times[:: max(1, len(times) // 12)]:\n"
        "    sel = snap[\"t\"] == t\n"
        "    ax.plot(snap[\"x\"][sel], snap[\"u\"][sel], lw=0.8, label=f\"t={t:.3g}\")\n"
        "ax.set_xlabel(\"x\")\n"
        "ax.set_ylabel(\"u\")\n"
        "fig.savefig(os.path.join(HERE, \"waterfall.png\"), dpi=120)\n"
        "\n"
        "# oscillation\n"
        "fig, ax = plt.subplots()\n"
        "ax.semilogy(diag[\"t\"], np.maximum(diag[\"osc\"], 1e-300))\n"
        "ax.set_xlabel(\"t\")\n"
        "ax.set_ylabel(\"max u - min u\")\n"
        "fig.savefig(os.path.join(HERE, \"oscillation.png\"), dpi=120)\n"
        "\n"
        "# energy drift\n"
        "fig, ax = plt.subplots()\n"
        "ax.plot(diag[\"t\"], diag[\"energy\"] / diag[\"energy\"][0] - 1.0)\n"
        "ax.set_xlabel(\"t\")\n"
        "ax.set_ylabel(\"relative drift of mean(u^2)\")\n"
        "fig.savefig(os.path.join(HERE, \"energy.png\"), dpi=120)\n"
        "\n"
        "# spectral decay\n"
        "fig, ax = plt.subplots()\n"
        "ax.semilogy(spec[\"k\"], np.maximum(spec[\"magnitude\"], 1e-300), \".\")\n"
        "ax.set_xlabel(\"|k|\")\n"
        "ax.set_ylabel(\"|u_k|\")\n"
        "fig.savefig(os.path.join(HERE, \"spectrum.png\"), dpi=120)\n";
  } else {
    if (!fs::exists(dir / "report.json")) throw IoError("plot script needs report.json");
    py +=
        "with open(os.path.join(HERE, \"report.json\")) as fh:\n"
        "    report = json.load(fh)\n"
        "\n"
        "# Schauder ratios\n"
        "runs = [v for v in report if v[\"name\"].startswith(\"schauder_ratio\")]\n"
        "fig, ax = plt.subplots()\n"
        "ax.bar(range(len(runs)), [v[\"measured\"][\"ratio\"] for v in runs])\n"
        "ax.set_xticks(range(len(runs)))\n"
        "ax.set_xticklabels([v[\"name\"].split(\" \", 1)[-1] for v in runs], rotation=45, ha=\"right\")\n"
        "ax.set_ylabel(\"ratio\")\n"
        "fig.tight_layout()\n"
        "fig.savefig(os.path.join(HERE, \"schauder.png\"), dpi=120)\n";
  }
  write_text(dir / "plot.py", py);
}

}  // namespace fracburgers
