#include "dimtrack/csvio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dimtrack {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  return out;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

void write_metrics_csv(const std::string& path, const std::string& scenario,
                       const std::string& method, double snr_db,
                       const MetricSeries& series) {
  std::ofstream out = open_out(path);
  out << "scenario,method,snr_db,frame,pd,rmse_pos,rmse_vel,n_detected\n";
  for (int k = 1; k <= series.n_frames(); ++k) {
    out << scenario << ',' << method << ',' << format_value(snr_db) << ',' << k
        << ',' << format_value(series.pd[k - 1]) << ',';
    if (!std::isnan(series.rmse_pos[k - 1])) {
      out << format_value(series.rmse_pos[k - 1]);
    }
    out << ',';
    if (!std::isnan(series.rmse_vel[k - 1])) {
      out << format_value(series.rmse_vel[k - 1]);
    }
    out << ',' << series.n_detected[k - 1] << '\n';
  }
}

MetricsFile read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open metrics file: " + path);
  }
  MetricsFile file;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty metrics file: " + path);
  }
  if (split_line(line).size() != 8) {
    throw std::runtime_error("bad metrics header in: " + path);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_line(line);
    if (f.size() != 8) {
      throw std::runtime_error("bad metrics row in: " + path);
    }
    file.scenario = f[0];
    file.method = f[1];
    file.snr_db = std::stod(f[2]);
    file.series.pd.push_back(std::stod(f[4]));
    file.series.rmse_pos.push_back(
        f[5].empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(f[5]));
    file.series.rmse_vel.push_back(
        f[6].empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(f[6]));
    file.series.n_detected.push_back(std::stoi(f[7]));
    file.series.object_present.push_back(false);  // not carried by the schema
  }
  if (file.series.pd.empty()) {
    throw std::runtime_error("metrics file has no rows: " + path);
  }
  return file;
}

void write_comparison_csv(const std::string& path, const ComparisonReport& rep) {
  std::ofstream out = open_out(path);
  out << "window,metric,mean_a,mean_b,delta,dominates\n";
  const std::string window =
      std::to_string(rep.window_lo) + "-" + std::to_string(rep.window_hi);
  auto row = [&](const char* metric, double a, double b, bool dominates) {
    out << window << ',' << metric << ',' << format_value(a) << ','
        << format_value(b) << ',' << format_value(a - b) << ','
        << (dominates ? 1 : 0) << '\n';
  };
  row("pd", rep.mean_pd_a, rep.mean_pd_b, rep.dominates_pd);
  row("rmse_pos", rep.mean_rmse_pos_a, rep.mean_rmse_pos_b, rep.dominates_rmse_pos);
  row("rmse_vel", rep.mean_rmse_vel_a, rep.mean_rmse_vel_b, rep.dominates_rmse_vel);
}

void write_truth_csv(const std::string& path, const std::vector<TruthPoint>& truth) {
  std::ofstream out = open_out(path);
  out << "frame,present,px,vx,py,vy\n";
  for (const TruthPoint& t : truth) {
    out << t.frame << ',' << (t.present ? 1 : 0);
    if (t.present) {
      out << ',' << format_value(t.state.px) << ',' << format_value(t.state.vx)
          << ',' << format_value(t.state.py) << ',' << format_value(t.state.vy);
    } else {
      out << ",,,,";
    }
    out << '\n';
  }
}

void write_frames_csv(const std::string& path, const std::vector<Frame>& frames) {
  std::ofstream out = open_out(path);
  out << "frame,i,j,value\n";
  for (const Frame& frame : frames) {
    for (int i = 1; i <= frame.rows; ++i) {
      for (int j = 1; j <= frame.cols; ++j) {
        out << frame.frame_index << ',' << i << ',' << j << ','
            << format_value(frame.at({i, j})) << '\n';
      }
    }
  }
}

void write_detections_csv(const std::string& path,
                          const std::vector<Detection>& detections) {
  std::ofstream out = open_out(path);
  out << "frame,cell_i,cell_j,statistic,iterations,path\n";
  for (const Detection& d : detections) {
    out << d.frame_index << ',' << d.cell.i << ',' << d.cell.j << ','
        << format_value(d.statistic) << ',' << d.iterations() << ',';
    for (size_t p = 0; p < d.path.size(); ++p) {
      if (p > 0) out << '|';
      out << d.path[p].frame << ':' << d.path[p].cell.i << ':' << d.path[p].cell.j;
    }
    out << '\n';
  }
}

void write_estimates_csv(const std::string& path,
                         const std::vector<RunStreams::EstimateRow>& rows) {
  std::ofstream out = open_out(path);
  out << "frame,px,vx,py,vy,trace_cov\n";
  for (const RunStreams::EstimateRow& r : rows) {
    out << r.frame << ',' << format_value(r.state.px) << ','
        << format_value(r.state.vx) << ',' << format_value(r.state.py) << ','
        << format_value(r.state.vy) << ',' << format_value(r.trace_cov) << '\n';
  }
}

void write_tbd_csv(const std::string& path,
                   const std::vector<RunStreams::TbdRow>& rows) {
  std::ofstream out = open_out(path);
  out << "frame,p_exist,declared,px,vx,py,vy\n";
  for (const RunStreams::TbdRow& r : rows) {
    out << r.frame << ',' << format_value(r.p_exist) << ',' << (r.declared ? 1 : 0);
    if (r.declared) {
      out << ',' << format_value(r.state.px) << ',' << format_value(r.state.vx)
          << ',' << format_value(r.state.py) << ',' << format_value(r.state.vy);
    } else {
      out << ",,,,";
    }
    out << '\n';
  }
}

}  // namespace dimtrack
