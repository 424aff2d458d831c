#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracburgers/grid.hpp"
#include "fracburgers/verify.hpp"

namespace fracburgers {

// Git blob object id: SHA-1 of "blob <size>\0" followed by the content.
std::string git_blob_sha1(const std::string& content);

// One CSV row per (snapshot, node): "t,x,u" with %.17g values.
std::string format_snapshot_rows(const Field& f);

// Streams snapshots into <dir>/snapshots.csv as the solver produces them.
class SnapshotWriter {
 public:
  explicit SnapshotWriter(const std::filesystem::path& dir);
  void append(const Field& f);
  // Flushes and closes; returns the path of the CSV.
  std::filesystem::path finish();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

// Writes snapshots.csv and manifest.json (config, content hash of the CSV,
// per-snapshot min/max/energy). Throws IoError.
void write_snapshots(const Trajectory& traj, const std::filesystem::path& dir,
                     const nlohmann::ordered_json& config);
// manifest.json for a CSV that was already streamed.
void write_manifest(const Trajectory& traj, const std::filesystem::path& dir,
                    const nlohmann::ordered_json& config,
                    const nlohmann::ordered_json& extra = nlohmann::ordered_json::object());

// diagnostics.csv: t,min,max,osc,mean,energy
void write_diagnostics(const Trajectory& traj, const std::filesystem::path& dir);
// spectrum.csv: k,magnitude for the final snapshot.
void write_spectrum(const Field& f, const std::filesystem::path& dir);

nlohmann::ordered_json verdicts_to_json(const std::vector<Verdict>& verdicts);
// report.json; returns true when every verdict passes.
bool write_report(const std::vector<Verdict>& verdicts, const std::filesystem::path& dir);

enum class PlotKind { Trajectory, Report };
// plot.py next to the data files it reads.
void emit_plot_script(PlotKind kind, const std::filesystem::path& dir);

}  // namespace fracburgers
