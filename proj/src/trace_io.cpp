#include "qsearch/trace_io.hpp"

#include <cstdio>
#include <sstream>

namespace qsearch {

std::string format_real_json(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

std::string format_real_csv(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.14e", x);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

namespace {

void real_array(std::ostringstream& out, const std::vector<double>& xs) {
  out << "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out << ", ";
    out << format_real_json(xs[i]);
  }
  out << "]";
}

void interval_obj(std::ostringstream& out, const Interval& iv) {
  out << "{\"l\": " << iv.l << ", \"m\": " << iv.m << "}";
}

void verdict_obj(std::ostringstream& out, const Verdict& v,
                 const char* indent) {
  out << "{\n"
      << indent << "  \"distinguishable\": "
      << (v.distinguishable ? "true" : "false") << ",\n"
      << indent << "  \"reason\": \"" << json_escape(v.reason) << "\"\n"
      << indent << "}";
}

void hybrid_obj(std::ostringstream& out, const HybridReport& h,
                const Verdict& verdict, const char* indent) {
  out << "{\n";
  out << indent << "  \"k_early\": " << h.k_early << ",\n";
  out << indent << "  \"k_late\": " << h.k_late << ",\n";
  out << indent << "  \"per_step_distance\": ";
  real_array(out, h.per_step_distance);
  out << ",\n";
  out << indent << "  \"per_step_bound\": ";
  real_array(out, h.per_step_bound);
  out << ",\n";
  out << indent << "  \"total_distance\": "
      << format_real_json(h.total_distance) << ",\n";
  out << indent << "  \"triangle_sum\": " << format_real_json(h.triangle_sum)
      << ",\n";
  out << indent << "  \"success_lo\": " << format_real_json(h.success_lo)
      << ",\n";
  out << indent << "  \"success_hi\": " << format_real_json(h.success_hi)
      << ",\n";
  out << indent << "  \"variational\": " << format_real_json(h.variational)
      << ",\n";
  out << indent << "  \"verdict\": ";
  std::string deeper = std::string(indent) + "  ";
  verdict_obj(out, verdict, deeper.c_str());
  out << "\n" << indent << "}";
}

}  // namespace

std::string trace_json(const AdversaryTrace& trace, const HybridReport& hybrid,
                       const Verdict& verdict) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"params\": {\n";
  out << "    \"q\": " << format_real_json(trace.params.q) << ",\n";
  out << "    \"t\": " << trace.params.t << ",\n";
  out << "    \"u\": " << trace.params.u << ",\n";
  out << "    \"q_prime\": " << format_real_json(trace.params.q_prime)
      << ",\n";
  out << "    \"v\": " << trace.v_used << "\n";
  out << "  },\n";
  out << "  \"n\": " << trace.n << ",\n";
  out << "  \"records\": [\n";
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const SubdivideRecord& rec = trace.records[i];
    out << "    {\n";
    out << "      \"s\": " << rec.s << ",\n";
    out << "      \"parent\": ";
    interval_obj(out, rec.parent);
    out << ",\n";
    out << "      \"child\": ";
    interval_obj(out, rec.child);
    out << ",\n";
    out << "      \"S_values\": ";
    real_array(out, rec.S_values);
    out << ",\n";
    out << "      \"chosen_r\": " << rec.chosen_r << ",\n";
    out << "      \"S_before\": " << format_real_json(rec.S_before) << ",\n";
    out << "      \"S_after\": " << format_real_json(rec.S_after) << "\n";
    out << "    }" << (i + 1 < trace.records.size() ? "," : "") << "\n";
  }
  out << "  ],\n";
  out << "  \"hybrid\": ";
  hybrid_obj(out, hybrid, verdict, "  ");
  out << "\n}\n";
  return out.str();
}

std::string trace_csv(const AdversaryTrace& trace) {
  std::ostringstream out;
  out << "step,s,parent_l,parent_m,child_l,child_m,chosen_r,S_before,"
         "S_after\n";
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const SubdivideRecord& rec = trace.records[i];
    out << (i + 1) << "," << rec.s << "," << rec.parent.l << ","
        << rec.parent.m << "," << rec.child.l << "," << rec.child.m << ","
        << rec.chosen_r << "," << format_real_csv(rec.S_before) << ","
        << format_real_csv(rec.S_after) << "\n";
  }
  return out.str();
}

std::string direct_attack_json(std::size_t n, const std::string& algorithm,
                               double success_threshold,
                               const std::vector<PairOutcome>& pairs) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"n\": " << n << ",\n";
  out << "  \"algorithm\": \"" << json_escape(algorithm) << "\",\n";
  out << "  \"success_threshold\": " << format_real_json(success_threshold)
      << ",\n";
  out << "  \"pairs\": [\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const PairOutcome& p = pairs[i];
    out << "    {\n";
    out << "      \"k_lo\": " << p.k_lo << ",\n";
    out << "      \"k_hi\": " << p.k_hi << ",\n";
    out << "      \"total_distance\": " << format_real_json(p.total_distance)
        << ",\n";
    out << "      \"success_lo\": " << format_real_json(p.success_lo)
        << ",\n";
    out << "      \"success_hi\": " << format_real_json(p.success_hi)
        << ",\n";
    out << "      \"variational\": " << format_real_json(p.variational)
        << ",\n";
    out << "      \"verdict\": ";
    verdict_obj(out, p.verdict, "      ");
    out << "\n    }" << (i + 1 < pairs.size() ? "," : "") << "\n";
  }
  out << "  ]\n";
  out << "}\n";
  return out.str();
}

std::string direct_attack_csv(const std::vector<PairOutcome>& pairs) {
  std::ostringstream out;
  out << "k_lo,k_hi,total_distance,success_lo,success_hi,variational,"
         "distinguishable,reason\n";
  for (const PairOutcome& p : pairs) {
    std::string reason = p.verdict.reason;
    for (char& c : reason)
      if (c == ',') c = ';';
    out << p.k_lo << "," << p.k_hi << ","
        << format_real_csv(p.total_distance) << ","
        << format_real_csv(p.success_lo) << ","
        << format_real_csv(p.success_hi) << ","
        << format_real_csv(p.variational) << ","
        << (p.verdict.distinguishable ? 1 : 0) << "," << reason << "\n";
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "q,t,u,accepted,q_prime,v,coefficient,coefficient_fraction,"
         "reject_reason\n";
  for (const SweepRow& r : rows) {
    std::string reason = r.reject_reason;
    for (char& c : reason)
      if (c == ',') c = ';';
    out << format_real_csv(r.q) << "," << r.t << "," << r.u << ","
        << (r.accepted ? 1 : 0) << ",";
    if (r.accepted) {
      out << format_real_csv(r.q_prime) << "," << r.v << ","
          << format_real_csv(r.coefficient) << "," << r.coefficient_fraction
          << ",";
    } else {
      out << ",,,," << reason;
    }
    out << "\n";
  }
  return out.str();
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "{\n  \"rows\": [\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    out << "    {\n";
    out << "      \"q\": " << format_real_json(r.q) << ",\n";
    out << "      \"t\": " << r.t << ",\n";
    out << "      \"u\": " << r.u << ",\n";
    out << "      \"accepted\": " << (r.accepted ? "true" : "false") << ",\n";
    if (r.accepted) {
      out << "      \"q_prime\": " << format_real_json(r.q_prime) << ",\n";
      out << "      \"v\": " << r.v << ",\n";
      out << "      \"coefficient\": " << format_real_json(r.coefficient)
          << ",\n";
      out << "      \"coefficient_fraction\": \""
          << json_escape(r.coefficient_fraction) << "\"\n";
    } else {
      out << "      \"reject_reason\": \"" << json_escape(r.reject_reason)
          << "\"\n";
    }
    out << "    }" << (i + 1 < rows.size() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

}  // namespace qsearch
