#include "kato/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "kato/degen.hpp"
#include "kato/invariants.hpp"
#include "kato/iso.hpp"

namespace kato {

using nlohmann::json;

namespace {

IntVec parse_vec(const json& j, int dim, const char* field) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ParseError(std::string(field) + ": expected an array of length " + std::to_string(dim));
  IntVec v(dim);
  for (int i = 0; i < dim; ++i) {
    if (j[i].is_number_integer())
      v[i] = Int(j[i].get<long>());
    else if (j[i].is_string())
      v[i] = Int(j[i].get<std::string>());
    else
      throw ParseError(std::string(field) + ": entries must be integers");
  }
  return v;
}

IntMat parse_matrix(const json& j, int n, const char* field) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(std::string(field) + ": expected " + std::to_string(n) + " rows");
  std::vector<IntVec> rows;
  for (const auto& r : j) rows.push_back(parse_vec(r, n, field));
  return IntMat::from_rows(rows);
}

GaussRat parse_gauss(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw ParseError("ell: each entry must be [\"re\", \"im\"] rational strings");
  return GaussRat{parse_rat(j[0].get<std::string>()), parse_rat(j[1].get<std::string>())};
}

Fan parse_fan_body(const json& j, int dim, const char* field) {
  if (!j.contains("rays") || !j.contains("max_cones"))
    throw ParseError(std::string(field) + ": needs rays and max_cones");
  std::vector<IntVec> rays;
  for (const auto& r : j.at("rays")) rays.push_back(parse_vec(r, dim, "rays"));
  std::vector<Cone> cones;
  for (const auto& c : j.at("max_cones")) {
    if (!c.is_array()) throw ParseError("max_cones: expected index lists");
    std::vector<IntVec> gens;
    for (const auto& i : c) {
      int idx = i.get<int>();
      if (idx < 0 || idx >= static_cast<int>(rays.size()))
        throw ParseError("max_cones: ray index out of range");
      gens.push_back(rays[idx]);
    }
    cones.push_back(Cone::make(dim, std::move(gens)));
  }
  return Fan(dim, std::move(cones));
}

json dump_vec(const IntVec& v) {
  json a = json::array();
  for (const Int& x : v) {
    if (x.fits_slong_p())
      a.push_back(x.get_si());
    else
      a.push_back(x.get_str());
  }
  return a;
}

}  // namespace

KatoData parse_kato_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax: ") + e.what());
  }
  if (!j.contains("dim")) throw ParseError("missing field: dim");
  int n = j.at("dim").get<int>();
  if (n < 1) throw ParseError("dim must be positive");

  if (!j.contains("modification")) throw ParseError("missing field: modification");
  const json& mod = j.at("modification");
  std::string type = mod.value("type", "");
  Fan fan;
  std::vector<IntVec> explicit_rays;
  if (type == "star_script") {
    fan = c0_fan(n);
    if (mod.contains("rays"))
      for (const auto& r : mod.at("rays")) fan = star_subdivide(fan, parse_vec(r, n, "rays"));
    if (mod.contains("removals"))
      for (const auto& r : mod.at("removals")) fan = remove_ray(fan, parse_vec(r, n, "removals"));
  } else if (type == "explicit") {
    for (const auto& r : mod.at("rays")) explicit_rays.push_back(parse_vec(r, n, "rays"));
    fan = parse_fan_body(mod, n, "modification");
  } else {
    throw ParseError("modification.type must be star_script or explicit");
  }

  IntMat a;
  if (j.contains("A")) {
    a = parse_matrix(j.at("A"), n, "A");
  } else if (j.contains("tau_A")) {
    const json& t = j.at("tau_A");
    if (!t.is_array() || static_cast<int>(t.size()) != n)
      throw ParseError("tau_A: expected n entries");
    std::vector<IntVec> cols;
    if (!t.empty() && t[0].is_array()) {
      for (const auto& c : t) cols.push_back(parse_vec(c, n, "tau_A"));
    } else {
      if (explicit_rays.empty())
        throw ParseError("tau_A: ray indices need an explicit modification");
      for (const auto& i : t) {
        int idx = i.get<int>();
        if (idx < 0 || idx >= static_cast<int>(explicit_rays.size()))
          throw ParseError("tau_A: ray index out of range");
        cols.push_back(explicit_rays[idx]);
      }
    }
    a = IntMat::from_cols(cols);
  } else {
    throw ParseError("missing field: A or tau_A");
  }

  std::optional<std::vector<GaussRat>> ell;
  if (j.contains("ell")) {
    std::vector<GaussRat> e;
    for (const auto& g : j.at("ell")) e.push_back(parse_gauss(g));
    if (static_cast<int>(e.size()) != n) throw ParseError("ell: expected n entries");
    ell = std::move(e);
  }

  if (!is_kato_matrix(a)) throw ParseError("A is not a Kato matrix");
  KatoData d = make_kato_data(std::move(fan), std::move(a), std::move(ell));
  ValidationReport rep = validate_kato_data(d);
  if (!rep.ok) {
    std::string msg = "invalid Kato data:";
    for (const auto& v : rep.violations) msg += "\n  - " + v;
    throw ParseError(msg);
  }
  return d;
}

Fan parse_fan_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax: ") + e.what());
  }
  if (!j.contains("dim") || !j.contains("fan")) throw ParseError("fan document needs dim and fan");
  return parse_fan_body(j.at("fan"), j.at("dim").get<int>(), "fan");
}

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax: ") + e.what());
  }
  if (j.contains("fan")) return parse_fan_document(text);
  return parse_kato_document(text);
}

std::string serialize(const KatoData& d) {
  json j;
  int n = d.n();
  j["dim"] = n;
  std::vector<IntVec> rays = d.sigma_hat.rays();
  std::map<IntVec, int> ray_idx;
  json jr = json::array();
  for (size_t i = 0; i < rays.size(); ++i) {
    ray_idx[rays[i]] = static_cast<int>(i);
    jr.push_back(dump_vec(rays[i]));
  }
  json jc = json::array();
  for (const Cone& c : d.sigma_hat.max_cones()) {
    json idx = json::array();
    for (const IntVec& g : c.gens) idx.push_back(ray_idx.at(g));
    jc.push_back(idx);
  }
  j["modification"] = {{"type", "explicit"}, {"rays", jr}, {"max_cones", jc}};
  json ja = json::array();
  for (int i = 0; i < n; ++i) ja.push_back(dump_vec(d.a.mat().row(i)));
  j["A"] = ja;
  if (d.ell) {
    json je = json::array();
    for (const GaussRat& g : *d.ell)
      je.push_back(json::array({rat_to_string(g.re), rat_to_string(g.im)}));
    j["ell"] = je;
  }
  return j.dump(2) + "\n";
}

std::string serialize(const Fan& f) {
  json j;
  j["dim"] = f.ambient();
  std::vector<IntVec> rays = f.rays();
  std::map<IntVec, int> ray_idx;
  json jr = json::array();
  for (size_t i = 0; i < rays.size(); ++i) {
    ray_idx[rays[i]] = static_cast<int>(i);
    jr.push_back(dump_vec(rays[i]));
  }
  json jc = json::array();
  for (const Cone& c : f.max_cones()) {
    json idx = json::array();
    for (const IntVec& g : c.gens) idx.push_back(ray_idx.at(g));
    jc.push_back(idx);
  }
  j["fan"] = {{"rays", jr}, {"max_cones", jc}};
  return j.dump(2) + "\n";
}

namespace {

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string vec_label(const IntVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

const char* kPalette[] = {"#cfe8ff", "#ffe3c2", "#d8f5d0", "#f5d0e8",
                          "#fff3b0", "#d0e8f5", "#e8d0f5", "#e0e0e0"};

}  // namespace

std::string render_svg(const Fan& f) {
  int n = f.ambient();
  if (n != 2 && n != 3)
    throw std::invalid_argument("render_svg: only planar (n=2) and cross-section (n=3) drawings");

  const double w = 640, h = 640;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";

  auto poly = [&](const std::vector<std::pair<double, double>>& pts, int color) {
    svg << "  <polygon points=\"";
    for (size_t i = 0; i < pts.size(); ++i)
      svg << (i ? " " : "") << fmt(pts[i].first) << "," << fmt(pts[i].second);
    svg << "\" fill=\"" << kPalette[color % 8] << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  };
  auto label = [&](double x, double y, const std::string& text) {
    svg << "  <text x=\"" << fmt(x) << "\" y=\"" << fmt(y)
        << "\" font-size=\"13\" font-family=\"monospace\" text-anchor=\"middle\">" << text
        << "</text>\n";
  };

  if (n == 2) {
    double cx = w / 2, cy = h / 2, radius = 250;
    auto place = [&](const IntVec& v) {
      double x = v[0].get_d(), y = v[1].get_d();
      double norm = std::sqrt(x * x + y * y);
      return std::pair<double, double>{cx + radius * x / norm, cy - radius * y / norm};
    };
    int color = 0;
    for (const Cone& c : f.max_cones()) {
      if (c.dim() != 2) continue;
      auto p1 = place(c.gens[0]), p2 = place(c.gens[1]);
      poly({{cx, cy}, p1, p2}, color++);
    }
    for (const IntVec& r : f.rays()) {
      auto p = place(r);
      svg << "  <line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(cy) << "\" x2=\"" << fmt(p.first)
          << "\" y2=\"" << fmt(p.second) << "\" stroke=\"#000\" stroke-width=\"1.5\"/>\n";
      double lx = cx + (p.first - cx) * 1.1, ly = cy + (p.second - cy) * 1.1;
      label(lx, ly, vec_label(r));
    }
  } else {
    // barycentric cross-section x+y+z = 1
    const double s3 = std::sqrt(3.0);
    auto place = [&](const IntVec& v) {
      double x = v[0].get_d(), y = v[1].get_d(), z = v[2].get_d();
      double sum = x + y + z;
      if (sum == 0) throw std::invalid_argument("render_svg: ray in the chart plane at infinity");
      x /= sum;
      y /= sum;
      z /= sum;
      double px = 80 + 480 * (y + z / 2);
      double py = 560 - 480 * (z * s3 / 2);
      return std::pair<double, double>{px, py};
    };
    int color = 0;
    for (const Cone& c : f.max_cones()) {
      if (c.dim() != 3) continue;
      poly({place(c.gens[0]), place(c.gens[1]), place(c.gens[2])}, color++);
    }
    std::map<std::pair<long, long>, int> used;
    for (const IntVec& r : f.rays()) {
      auto p = place(r);
      svg << "  <circle cx=\"" << fmt(p.first) << "\" cy=\"" << fmt(p.second)
          << "\" r=\"3\" fill=\"#000\"/>\n";
      // nudge stacked labels apart deterministically
      auto key = std::make_pair(std::lround(p.first), std::lround(p.second));
      int bump = used[key]++;
      label(p.first, p.second - 8 - 14 * bump, vec_label(r));
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string export_fan(const Fan& f) { return serialize(f); }

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Fan document_fan(const Document& doc) {
  if (std::holds_alternative<Fan>(doc)) return std::get<Fan>(doc);
  return std::get<KatoData>(doc).sigma_hat;
}

std::string kind_name(KatoKind k) { return to_string(k); }

void print_invariants(const InvariantReport& rep, int n, const std::vector<long>& counts,
                      std::ostream& out) {
  out << "cone counts a_j: ";
  for (size_t i = 0; i < counts.size(); ++i) out << (i ? " " : "") << counts[i];
  out << "\n";
  out << "betti:";
  for (const Int& b : rep.betti) out << " " << b;
  out << "\n";
  out << "euler: " << rep.euler << " (= a_" << n << " - 1)\n";
  out << "sharp D: " << rep.sharp_d << " (= a_1 - n)\n";
  out << "sharp D_T: " << rep.sharp_dt << "\n";
  switch (rep.hodge.status) {
    case HodgeStatus::Exact:
      out << "hodge: exact; h^{0,1} = 1, h^{1,1} = " << rep.sharp_d << " (= sharp D)\n";
      break;
    case HodgeStatus::ConditionalParabolic:
      out << "hodge: conditional-parabolic; h^{0,1} = 1, h^{1,1} = " << rep.sharp_d << "\n";
      break;
    case HodgeStatus::NotComputed:
      out << "hodge: not-computed\n";
      break;
  }
  out << "log cohomology: h^0(Theta(-log D_T)) = " << rep.log_cohomology.h0;
  if (rep.log_cohomology.h1)
    out << ", h^1 = " << *rep.log_cohomology.h1 << ", h^{>=2} = 0";
  out << "\n";
  out << "canonical: " << rep.canonical.bundle << ", det sign " << rep.canonical.det_sign
      << ", kodaira " << rep.canonical.kodaira << "\n";
  out << "census (depth " << rep.census.depth << "): elliptic " << rep.census.elliptic
      << ", rational " << rep.census.rational;
  if (rep.census.hopf_orbit_caveat) out << " [orbit counts; nontrivial permutation]";
  out << "\n";
  if (rep.connectivity)
    out << "connectivity: D has " << rep.connectivity->components_d << " component(s), D_T has "
        << rep.connectivity->components_dt << "\n";
  out << "metrics: lcK " << (rep.metrics.lck ? "yes" : "no") << "; balanced "
      << rep.metrics.balanced << "; strongly Gauduchon " << rep.metrics.strongly_gauduchon
      << "; Hermitian-symplectic " << rep.metrics.hermitian_symplectic << "; pluriclosed "
      << rep.metrics.pluriclosed << "\n";
}

struct Flags {
  int depth = 2;
  int window = 3;
  int coeff_bound = 8;
  int shift_bound = -1;
  double tolerance = 1e-12;
  std::string out_path;
  std::string kind = "nakamura";
  long l = 0, m = 1;
  int k = 2;
  std::vector<std::string> positional;
};

Flags parse_flags(const std::vector<std::string>& args, size_t start) {
  Flags f;
  for (size_t i = start; i < args.size(); ++i) {
    const std::string& a = args[i];
    auto need = [&](const char* name) -> std::string {
      if (i + 1 >= args.size()) throw ParseError(std::string(name) + " needs a value");
      return args[++i];
    };
    if (a == "--depth") f.depth = std::stoi(need("--depth"));
    else if (a == "--window") f.window = std::stoi(need("--window"));
    else if (a == "--coeff-bound") f.coeff_bound = std::stoi(need("--coeff-bound"));
    else if (a == "--shift-bound") f.shift_bound = std::stoi(need("--shift-bound"));
    else if (a == "--tolerance") f.tolerance = std::stod(need("--tolerance"));
    else if (a == "--out") f.out_path = need("--out");
    else if (a == "--kind") f.kind = need("--kind");
    else if (a == "--l") f.l = std::stol(need("--l"));
    else if (a == "--m") f.m = std::stol(need("--m"));
    else if (a == "--k") f.k = std::stoi(need("--k"));
    else if (!a.empty() && a[0] == '-') throw ParseError("unknown flag " + a);
    else f.positional.push_back(a);
  }
  return f;
}

void write_out(const Flags& f, const std::string& text, std::ostream& out) {
  if (f.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out_path);
  if (!file) throw ParseError("cannot write " + f.out_path);
  file << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  static const char* usage =
      "usage: kato <validate|classify|invariants|census|iso|degenerate|collapse|power|render|export>"
      " <document.json> [...] [--depth N] [--window N] [--coeff-bound N] [--shift-bound N]"
      " [--tolerance X] [--kind nakamura|isotrivial] [--l N] [--m N] [--k N] [--out FILE]\n";
  try {
    if (args.empty()) {
      err << usage;
      return 1;
    }
    const std::string& cmd = args[0];
    Flags flags = parse_flags(args, 1);
    auto need_files = [&](size_t n) {
      if (flags.positional.size() != n)
        throw ParseError(cmd + ": expected " + std::to_string(n) + " document path(s)");
    };

    if (cmd == "validate") {
      need_files(1);
      Document doc = parse_document(read_file(flags.positional[0]));
      if (std::holds_alternative<Fan>(doc)) {
        FanReport rep = fan_validate(std::get<Fan>(doc));
        out << "fan: " << (rep.ok ? "valid" : ("invalid: " + rep.message)) << "\n";
        if (rep.ok) {
          out << "counts:";
          for (long c : rep.counts) out << " " << c;
          out << "\nregular: " << (rep.all_regular ? "yes" : "no") << "\n";
        }
        return rep.ok ? 0 : 1;
      }
      const KatoData& d = std::get<KatoData>(doc);
      out << "valid Kato data: " << kind_name(d.a.kind()) << ", n = " << d.n() << "\n";
      return 0;
    }
    if (cmd == "classify") {
      need_files(1);
      KatoData d = parse_kato_document(read_file(flags.positional[0]));
      out << "kind: " << kind_name(d.a.kind()) << "\n";
      out << "P(A):";
      for (int j : d.a.pa().p) out << " " << j + 1;
      out << "\nm0: " << d.a.pa().m0 << "\ns order: " << d.a.order_s()
          << "\ncycles: " << d.a.cycles().size() << "\n";
      GermReport g = germ_report(d);
      out << "germ: " << g.germ << "\nH_infty: " << g.h_infty << "\nInv(F): " << g.inv << "\n"
          << g.splitting << "\n";
      return 0;
    }
    if (cmd == "invariants") {
      need_files(1);
      KatoData d = parse_kato_document(read_file(flags.positional[0]));
      InvariantReport rep = invariant_report(d, flags.depth);
      print_invariants(rep, d.n(), d.sigma_hat.cone_counts(), out);
      return 0;
    }
    if (cmd == "census") {
      need_files(1);
      KatoData d = parse_kato_document(read_file(flags.positional[0]));
      CensusResult c = curve_census(d, flags.depth);
      out << "elliptic: " << c.elliptic << "\nrational: " << c.rational << "\n";
      if (c.hopf_orbit_caveat) out << "note: orbit counts under a nontrivial permutation\n";
      return 0;
    }
    if (cmd == "iso") {
      need_files(2);
      KatoData dx = parse_kato_document(read_file(flags.positional[0]));
      KatoData dy = parse_kato_document(read_file(flags.positional[1]));
      IsoVerdict v = find_equivariant_iso(dx, dy, flags.coeff_bound, flags.shift_bound);
      switch (v.answer) {
        case IsoAnswer::Yes: {
          out << "Yes (shift " << (v.shift ? *v.shift : 0) << "): Q =";
          for (int i = 0; i < v.witness_q->rows(); ++i) {
            out << " [";
            for (int j = 0; j < v.witness_q->cols(); ++j)
              out << (j ? " " : "") << v.witness_q->at(i, j);
            out << "]";
          }
          out << "\n";
          return 0;
        }
        case IsoAnswer::No:
          out << "No: " << v.certificate << "\n";
          return 0;
        case IsoAnswer::Unknown:
          out << "Unknown: " << v.certificate << "\n";
          return 2;
      }
    }
    if (cmd == "degenerate") {
      need_files(1);
      KatoData d = parse_kato_document(read_file(flags.positional[0]));
      DegenerationFan df;
      if (flags.kind == "nakamura") {
        df = nakamura_fan(d, flags.window);
      } else if (flags.kind == "isotrivial") {
        IsotrivialU u = isotrivial_u(d);
        if (!u.u) {
          out << "isotrivial degeneration: absent (certificate functional ";
          out << vec_label(*u.certificate) << ")\n";
          return 0;
        }
        df = isotrivial_fan(d, *u.u, flags.window);
        out << "u: " << vec_label(*df.u) << "\nv: " << vec_label(*df.v) << "\n";
      } else {
        throw ParseError("--kind must be nakamura or isotrivial");
      }
      out << "Atilde det: " << det(df.atilde) << "\n";
      out << "central fiber: " << (is_complete(df.central_fiber) ? "complete" : "incomplete")
          << ", " << (df.smooth ? "smooth" : "singular") << "\n";
      write_out(flags, serialize(df.central_fiber), out);
      return 0;
    }
    if (cmd == "collapse") {
      need_files(1);
      KatoData d = parse_kato_document(read_file(flags.positional[0]));
      Fan f = collapsed_fan(d, flags.l, flags.m);
      write_out(flags, serialize(f), out);
      return 0;
    }
    if (cmd == "power") {
      need_files(1);
      KatoData d = parse_kato_document(read_file(flags.positional[0]));
      KatoData p = power_data(d, flags.k);
      write_out(flags, serialize(p), out);
      return 0;
    }
    if (cmd == "render") {
      need_files(1);
      Document doc = parse_document(read_file(flags.positional[0]));
      write_out(flags, render_svg(document_fan(doc)), out);
      return 0;
    }
    if (cmd == "export") {
      need_files(1);
      Document doc = parse_document(read_file(flags.positional[0]));
      write_out(flags, export_fan(document_fan(doc)), out);
      return 0;
    }
    err << usage;
    return 1;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace kato
