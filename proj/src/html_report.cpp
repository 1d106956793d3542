#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "fairseco/history.hpp"
#include "fairseco/report.hpp"
#include "fairseco/timeutil.hpp"

namespace fairseco {

namespace {

std::string esc(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string pct(double score) { return fmt::format("{}%", display_percent(score)); }

std::string num(double v) { return fmt::format("{:.2f}", v); }

std::string signed_num(double v) {
  if (std::abs(v) < 0.005) return "0.00";
  return fmt::format("{:+.2f}", v);
}

std::string or_dash(const std::optional<std::string>& v) { return v ? esc(*v) : "&ndash;"; }

constexpr std::string_view kStyle = R"(
body{font-family:Helvetica,Arial,sans-serif;margin:0 auto;max-width:60em;padding:1em;color:#222}
nav a{margin-right:1em}
section{border-top:2px solid #446;padding-top:.5em;margin-top:1.5em}
table{border-collapse:collapse;margin:.5em 0}
th,td{border:1px solid #bbb;padding:.2em .6em;text-align:left;vertical-align:top}
.pass{color:#175e17;font-weight:bold}
.fail{color:#9a1c1c;font-weight:bold}
.placeholder{font-style:italic;color:#666}
.warn{color:#8a5a00}
@media print{nav{display:none}section{page-break-before:always;border:none}section:first-of-type{page-break-before:auto}}
)";

// Polar polygon over the radar axes, radius scaled to the largest count.
std::string radar_svg(const RadarData& radar) {
  if (radar.axes.empty()) return "<p class=\"placeholder\">no citations</p>\n";
  constexpr double size = 420, cx = size / 2, cy = size / 2, r = 140;
  const auto n = radar.axes.size();
  std::uint64_t max_count = 1;
  for (const auto& a : radar.axes) max_count = std::max(max_count, a.count);
  const auto angle = [&](std::size_t i) {
    return -std::numbers::pi / 2 + 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
  };

  std::string svg = fmt::format(
      "<svg width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\" "
      "role=\"img\" aria-label=\"citations per field\">\n",
      size);
  for (int ring = 1; ring <= 4; ++ring) {
    std::string pts;
    for (std::size_t i = 0; i < n; ++i) {
      const double rr = r * ring / 4.0;
      pts += fmt::format("{}{},{}", i ? " " : "", num(cx + rr * std::cos(angle(i))),
                         num(cy + rr * std::sin(angle(i))));
    }
    if (n >= 3)
      svg += fmt::format("<polygon points=\"{}\" fill=\"none\" stroke=\"#ccc\"/>\n", pts);
    else
      svg += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#ccc\"/>\n", num(cx),
                         num(cy), num(r * ring / 4.0));
  }
  std::string data_pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = cx + r * std::cos(angle(i)), y = cy + r * std::sin(angle(i));
    svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999\"/>\n", num(cx), num(cy),
                       num(x), num(y));
    const double lx = cx + (r + 18) * std::cos(angle(i)), ly = cy + (r + 18) * std::sin(angle(i));
    const char* anchor = std::abs(lx - cx) < 1 ? "middle" : (lx > cx ? "start" : "end");
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"{}\">{} ({})</text>\n", num(lx),
                       num(ly), anchor, esc(radar.axes[i].field), radar.axes[i].count);
    const double share = static_cast<double>(radar.axes[i].count) / static_cast<double>(max_count);
    data_pts += fmt::format("{}{},{}", i ? " " : "", num(cx + r * share * std::cos(angle(i))),
                            num(cy + r * share * std::sin(angle(i))));
  }
  svg += fmt::format(
      "<polygon class=\"radar\" points=\"{}\" fill=\"#4a6fa5\" fill-opacity=\"0.35\" stroke=\"#274472\" "
      "stroke-width=\"2\"/>\n",
      data_pts);
  svg += "</svg>\n";
  return svg;
}

void overview(std::string& h, const ReportDocument& r) {
  const auto& m = r.snapshot.metadata;
  std::optional<std::string> issued;
  if (r.citation_metadata) issued = r.citation_metadata->date_released;
  h += "<section id=\"overview\">\n<h2>Overview</h2>\n<table>\n";
  h += fmt::format("<tr><th>Title</th><td>{}</td></tr>\n", esc(m.title));
  h += fmt::format("<tr><th>Owner</th><td>{}</td></tr>\n", esc(m.owner));
  h += fmt::format("<tr><th>Repository</th><td>{}</td></tr>\n", esc(r.snapshot.ref.url()));
  h += fmt::format("<tr><th>Issue date</th><td>{}</td></tr>\n", or_dash(issued));
  h += fmt::format("<tr><th>Stars</th><td>{}</td></tr>\n", m.stars);
  h += fmt::format("<tr><th>Watchers</th><td>{}</td></tr>\n", m.watchers);
  h += fmt::format("<tr><th>Forks</th><td>{}</td></tr>\n", m.forks);
  h += fmt::format("<tr><th>Default branch</th><td>{}</td></tr>\n", esc(m.default_branch));
  h += fmt::format("<tr><th>Declared license</th><td>{}</td></tr>\n", or_dash(m.declared_license_id));
  h += fmt::format("<tr><th>Assessed at</th><td>{}</td></tr>\n", format_utc(m.assessed_at));
  h += "</table>\n";
  if (!r.warnings.empty()) {
    h += "<h3>Warnings</h3>\n<ul>\n";
    for (const auto& w : r.warnings) h += fmt::format("<li class=\"warn\">{}</li>\n", esc(w));
    h += "</ul>\n";
  }
  h += "</section>\n";
}

void citation(std::string& h, const ReportDocument& r) {
  h += "<section id=\"citation\">\n<h2>Citation</h2>\n";
  h += fmt::format("<p>Software DOI: {}</p>\n", or_dash(r.software_doi));
  if (r.citation_metadata) {
    std::string authors;
    for (const auto& a : r.citation_metadata->authors) {
      if (!authors.empty()) authors += "; ";
      authors += a.given_names.empty() ? a.family_names : a.family_names + ", " + a.given_names;
    }
    h += fmt::format("<p>Cite as: {}. <em>{}</em>{}.</p>\n", esc(authors), esc(r.citation_metadata->title),
                     r.citation_metadata->version ? " version " + esc(*r.citation_metadata->version) : "");
  }
  if (r.citations_status == section_status::kUnavailable) {
    h += "<p class=\"placeholder\">Citation catalogs were unavailable for this run.</p>\n";
  } else if (r.citations.records.empty()) {
    h += "<p class=\"placeholder\">No citing works found.</p>\n";
  } else {
    h += fmt::format("<p>Cited by {} works.</p>\n", r.citations.n_citations);
    h += "<table>\n<tr><th>Title</th><th>Authors</th><th>Date</th><th>Venue</th><th>DOI</th><th>Source</th></tr>\n";
    for (const auto& c : r.citations.records) {
      std::string authors;
      for (const auto& a : c.authors) authors += (authors.empty() ? "" : ", ") + a;
      h += fmt::format("<tr><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td></tr>\n",
                       esc(c.title), esc(authors), or_dash(c.publication_date), or_dash(c.venue),
                       or_dash(c.doi), to_string(c.source_catalog));
    }
    h += "</table>\n";
  }
  h += "</section>\n";
}

void fairness(std::string& h, const ReportDocument& r) {
  static constexpr const char* kNames[] = {
      "Publicly accessible repository with version control", "License", "Community registry",
      "Citation information", "Software quality checklist"};
  h += "<section id=\"fairness\">\n<h2>FAIRness</h2>\n";
  h += fmt::format("<p>Score: {} of 5 ({})</p>\n", r.fairness.raw_score, pct(r.fairness.s_fair));
  h += "<table>\n<tr><th>Recommendation</th><th>Result</th><th>Evidence</th></tr>\n";
  for (const auto& c : r.fairness.checks) {
    std::string evidence;
    for (const auto& e : c.evidence) evidence += (evidence.empty() ? "" : "<br>") + esc(e);
    h += fmt::format("<tr><td>{} {}</td><td class=\"{}\">{}</td><td>{}</td></tr>\n", to_string(c.recommendation),
                     kNames[static_cast<int>(c.recommendation) - 1], c.passed ? "pass" : "fail",
                     c.passed ? "pass" : "fail", evidence);
  }
  h += "</table>\n</section>\n";
}

void license(std::string& h, const ReportDocument& r) {
  const auto& a = r.license_audit;
  h += "<section id=\"license\">\n<h2>License violation</h2>\n";
  h += fmt::format("<p>Root license: {}. Dependencies: {}. Violations: {}. Fraction not violated: {}. "
                   "License score: {}.</p>\n",
                   or_dash(a.root_license), a.n_licenses, a.violated_count, num(a.fraction_ok),
                   pct(r.scorecard.s_license));
  if (a.findings.empty()) {
    h += "<p class=\"placeholder\">No dependencies declared.</p>\n";
  } else {
    h += "<table>\n<tr><th>Package</th><th>Version</th><th>Ecosystem</th><th>License</th><th>Verdict</th>"
         "<th>Rationale</th></tr>\n";
    for (const auto& f : a.findings) {
      const auto& d = f.dependency;
      h += fmt::format("<tr><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td></tr>\n",
                       esc(d.name), or_dash(d.version), esc(d.ecosystem), or_dash(d.license_id),
                       to_string(f.verdict), esc(f.rationale));
    }
    h += "</table>\n";
  }
  h += "</section>\n";
}

void impact(std::string& h, const ReportDocument& r) {
  const auto& s = r.scorecard;
  h += "<section id=\"impact\">\n<h2>Impact</h2>\n<table>\n";
  h += fmt::format("<tr><th>Citations</th><td>{}</td></tr>\n", s.n_citations);
  h += fmt::format("<tr><th>Reused in other projects</th><td>{}</td></tr>\n", s.n_reuse_projects);
  h += fmt::format("<tr><th>Impact score</th><td>{}</td></tr>\n", pct(s.s_impact));
  h += "</table>\n<h3>Citations per field</h3>\n";
  h += radar_svg(r.radar);
  h += "<h3>Most significant citing paper</h3>\n";
  if (r.highlight) {
    const auto& p = *r.highlight;
    h += fmt::format("<p><em>{}</em> ({}){}</p>\n", esc(p.title), or_dash(p.publication_date),
                     p.cited_by_count ? fmt::format(", cited {} times", *p.cited_by_count) : "");
  } else {
    h += "<p class=\"placeholder\">none</p>\n";
  }
  h += "<h3>Method reuse</h3>\n";
  if (r.reuse_status != section_status::kAvailable) {
    h += "<p class=\"placeholder\">No reuse index was supplied.</p>\n";
  } else if (r.reuse.matches.empty()) {
    h += "<p class=\"placeholder\">No reused methods found.</p>\n";
  } else {
    h += "<table>\n<tr><th>Method</th><th>Location</th><th>Found in</th><th>Direction</th></tr>\n";
    for (const auto& m : r.reuse.matches) {
      std::string where;
      for (const auto& e : m.remote)
        where += fmt::format("{}{} ({}:{})", where.empty() ? "" : "<br>", esc(e.project), esc(e.file), e.line);
      h += fmt::format("<tr><td>{}</td><td>{}:{}-{}</td><td>{}</td><td>{}</td></tr>\n", esc(m.local.method),
                       esc(m.local.file), m.local.line, m.local_end_line, where, to_string(m.direction));
    }
    h += "</table>\n";
  }
  h += "</section>\n";
}

void quality(std::string& h, const ReportDocument& r) {
  const auto& s = r.scorecard;
  const auto& w = s.weights;
  h += "<section id=\"quality\">\n<h2>Quality Score</h2>\n";
  h += fmt::format("<p>Quality score: <strong>{}</strong></p>\n", pct(s.s_quality));
  h += "<table>\n<tr><th>Component</th><th>Score</th><th>Weight</th></tr>\n";
  h += fmt::format("<tr><td>FAIRness</td><td>{}</td><td>{}</td></tr>\n", pct(s.s_fair), w.fair);
  h += fmt::format("<tr><td>License</td><td>{}</td><td>{}</td></tr>\n", pct(s.s_license), w.license);
  h += fmt::format("<tr><td>Maintainability</td><td>{}</td><td>{}</td></tr>\n", pct(s.s_maintainability),
                   w.maintainability);
  h += fmt::format("<tr><td>Documentation</td><td>{}</td><td>{}</td></tr>\n", pct(s.s_documentation),
                   w.documentation);
  h += "</table>\n";
  h += fmt::format("<p>Issues: {} total, {} closed.</p>\n", r.snapshot.issues.total, r.snapshot.issues.closed);
  h += "</section>\n";
}

void history_section(std::string& h, const ImpactHistory* history) {
  h += "<section id=\"history\">\n<h2>Impact History</h2>\n";
  if (!history || history->entries.empty()) {
    h += "<p class=\"placeholder\">No history recorded.</p>\n";
  } else {
    h += "<table>\n<tr><th>Run</th><th>Quality</th><th>FAIRness</th><th>Citations</th><th>Reuse</th></tr>\n";
    for (const auto& e : history->entries)
      h += fmt::format("<tr><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td></tr>\n",
                       format_utc(e.timestamp), num(e.s_quality), num(e.s_fair), e.n_citations, e.n_reuse);
    h += "</table>\n";
    if (history->deltas.empty()) {
      h += "<p class=\"placeholder\">First run: no changes to compare yet.</p>\n";
    } else {
      const auto& d = history->deltas.back();
      h += fmt::format(
          "<p>Since the last run: quality {}, FAIRness {}, citations {:+d}, reuse {:+d}.</p>\n",
          signed_num(d.s_quality), signed_num(d.s_fair), d.n_citations, d.n_reuse);
    }
  }
  h += "</section>\n";
}

}  // namespace

std::string render_html(const ReportDocument& report, const ImpactHistory* history) {
  std::string h;
  h += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  h += fmt::format("<title>FAIRSECO report: {}</title>\n", esc(report.snapshot.ref.slug()));
  h += fmt::format("<style>{}</style>\n</head>\n<body>\n", kStyle);
  h += fmt::format("<h1>{}</h1>\n<p>Generated {} (schema {})</p>\n", esc(report.snapshot.ref.slug()),
                   format_utc(report.generated_at), esc(report.schema_version));
  h += "<nav><a href=\"#overview\">Overview</a><a href=\"#citation\">Citation</a>"
       "<a href=\"#fairness\">FAIRness</a><a href=\"#license\">License violation</a>"
       "<a href=\"#impact\">Impact</a><a href=\"#quality\">Quality Score</a>"
       "<a href=\"#history\">Impact History</a></nav>\n";
  overview(h, report);
  citation(h, report);
  fairness(h, report);
  license(h, report);
  impact(h, report);
  quality(h, report);
  history_section(h, history);
  h += "</body>\n</html>\n";
  return h;
}

}  // namespace fairseco
