#include "ucboost/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ucboost {

namespace {

std::string g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

void write_regret_csv(std::ostream& out, const std::vector<RegretTrace>& traces) {
  std::vector<const RegretTrace*> order;
  for (const auto& t : traces) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(),
                   [](const RegretTrace* a, const RegretTrace* b) { return a->policy < b->policy; });
  out << "policy,t,mean_regret,stderr\n";
  for (const RegretTrace* trace : order) {
    std::vector<TracePoint> points = trace->points;
    std::stable_sort(points.begin(), points.end(),
                     [](const TracePoint& a, const TracePoint& b) { return a.t < b.t; });
    for (const auto& p : points) {
      out << trace->policy << ',' << p.t << ',' << g9(p.mean_regret) << ',' << g9(p.std_error)
          << '\n';
    }
  }
}

void write_regret_csv(const std::string& path, const std::vector<RegretTrace>& traces) {
  std::ofstream out = open_for_write(path);
  write_regret_csv(out, traces);
  finish(out, path);
}

std::vector<RegretTrace> read_regret_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "policy,t,mean_regret,stderr") {
    throw std::runtime_error("not a regret csv: bad header");
  }
  std::map<std::string, RegretTrace> by_policy;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 4) {
      throw std::runtime_error("regret csv line " + std::to_string(lineno) + ": expected 4 fields");
    }
    TracePoint p;
    try {
      p.t = std::stol(cells[1]);
      p.mean_regret = std::stod(cells[2]);
      p.std_error = std::stod(cells[3]);
    } catch (const std::exception&) {
      throw std::runtime_error("regret csv line " + std::to_string(lineno) + ": bad number");
    }
    RegretTrace& trace = by_policy[cells[0]];
    trace.policy = cells[0];
    trace.points.push_back(p);
  }
  std::vector<RegretTrace> traces;
  for (auto& [name, trace] : by_policy) traces.push_back(std::move(trace));
  return traces;
}

std::vector<RegretTrace> read_regret_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read_regret_csv(in);
}

void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows) {
  out << "policy,calls,median_ns,mean_ns,p99_ns\n";
  for (const auto& r : rows) {
    out << r.policy << ',' << r.calls << ',' << g9(r.median_ns) << ',' << g9(r.mean_ns) << ','
        << g9(r.p99_ns) << '\n';
  }
}

void write_timing_csv(const std::string& path, const std::vector<TimingRow>& rows) {
  std::ofstream out = open_for_write(path);
  write_timing_csv(out, rows);
  finish(out, path);
}

}  // namespace ucboost
