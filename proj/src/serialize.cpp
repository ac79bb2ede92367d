#include "fixlab/serialize.hpp"

#include <ostream>

namespace fixlab {

using nlohmann::ordered_json;

ordered_json to_json(const Point& p) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < p.dim(); ++i) arr.push_back(p[i]);
  return arr;
}

ordered_json to_json(const ContractionCertificate& cert) {
  ordered_json j;
  j["class"] = std::string(to_string(cert.class_id));
  j["verdict"] = std::string(to_string(cert.verdict));
  j["pairs_tested"] = cert.pairs_tested;
  j["max_ratio"] = cert.max_ratio;
  j["slack"] = cert.slack;
  j["seed"] = cert.seed;
  ordered_json witnesses = ordered_json::array();
  for (const Witness& w : cert.witnesses) {
    ordered_json entry;
    entry["x"] = to_json(w.x);
    entry["y"] = to_json(w.y);
    entry["lhs"] = w.lhs;
    entry["rhs"] = w.rhs;
    witnesses.push_back(std::move(entry));
  }
  j["witnesses"] = std::move(witnesses);
  return j;
}

ordered_json to_json(const IterationReport& report) {
  ordered_json j;
  j["status"] = std::string(to_string(report.status));
  j["iterations"] = report.iterations;
  j["final_point"] = to_json(report.final_point);
  j["estimated_rate"] =
      report.estimated_rate ? ordered_json(*report.estimated_rate)
                            : ordered_json(nullptr);
  j["tail_bound"] = report.tail_bound ? ordered_json(*report.tail_bound)
                                      : ordered_json(nullptr);
  j["limit_proxy"] = report.limit_proxy ? to_json(*report.limit_proxy)
                                        : ordered_json(nullptr);
  return j;
}

void write_trace_jsonl(std::ostream& os, const OrbitTrace& trace) {
  for (std::size_t n = 0; n < trace.steps(); ++n) {
    ordered_json line;
    line["n"] = n;
    line["step_distance"] = trace.step_distance[n];
    if (std::optional<double> r = trace.ratio(n)) line["ratio"] = *r;
    if (std::optional<double> g = trace.gap(n)) line["gap"] = *g;
    if (std::optional<Point> p = trace.point_at(n)) line["point"] = to_json(*p);
    os << line.dump() << '\n';
  }
}

void write_certificates_json(std::ostream& os,
                             std::span<const ContractionCertificate> certs) {
  ordered_json arr = ordered_json::array();
  for (const ContractionCertificate& c : certs) arr.push_back(to_json(c));
  os << arr.dump(2) << '\n';
}

}  // namespace fixlab
