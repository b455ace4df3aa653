#include "io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace elastica {

namespace fs = std::filesystem;

std::string format_full(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void atomic_write(const std::string& file, const std::string& content) {
  const fs::path target(file);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("rename to " + file + " failed: " + ec.message());
  }
}

namespace {

std::vector<std::string> read_lines(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file + ": " + std::strerror(errno));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

bool blank_or_comment(const std::string& s) {
  for (char c : s) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Vec2 parse_vertex(const std::string& line, const std::string& file, size_t lineno) {
  const char* s = line.c_str();
  char* end = nullptr;
  const double x = std::strtod(s, &end);
  if (end == s) throw IoError(file + ":" + std::to_string(lineno) + ": expected \"x,y\"");
  while (*end == ' ' || *end == '\t') ++end;
  if (*end != ',')
    throw IoError(file + ":" + std::to_string(lineno) + ": missing ',' separator");
  const char* s2 = end + 1;
  const double y = std::strtod(s2, &end);
  if (end == s2) throw IoError(file + ":" + std::to_string(lineno) + ": expected y value");
  return {x, y};
}

}  // namespace

Chain load_curve(const std::string& file) {
  std::vector<Vec2> verts;
  const auto lines = read_lines(file);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (blank_or_comment(lines[i])) continue;
    verts.push_back(parse_vertex(lines[i], file, i + 1));
  }
  if (verts.size() < 3) throw IoError(file + ": fewer than 3 vertices");
  return Chain(std::move(verts));
}

void save_curve(const Chain& chain, const std::string& file) {
  std::ostringstream out;
  out << "# closed curve, " << chain.size() << " vertices, one x,y per line\n";
  for (const Vec2& v : chain.vertices())
    out << format_full(v.x) << ',' << format_full(v.y) << '\n';
  atomic_write(file, out.str());
}

PathOfChains load_path(const std::string& file) {
  const auto lines = read_lines(file);
  const fs::path dir = fs::path(file).parent_path();
  size_t n = 0, nt = 0;
  double a = 1.0, b = 1.0;
  std::vector<Chain> slices;
  size_t i = 0;
  auto fail = [&](const std::string& msg, size_t lineno) -> IoError {
    return IoError(file + ":" + std::to_string(lineno) + ": " + msg);
  };
  for (; i < lines.size(); ++i) {
    if (blank_or_comment(lines[i])) continue;
    std::istringstream ss(lines[i]);
    std::string key;
    ss >> key;
    if (key == "n") {
      ss >> n;
    } else if (key == "nt") {
      ss >> nt;
    } else if (key == "a") {
      ss >> a;
    } else if (key == "b") {
      ss >> b;
    } else if (key == "curve" || key == "file") {
      break;
    } else {
      throw fail("unknown manifest key '" + key + "'", i + 1);
    }
    if (!ss) throw fail("bad value for key '" + key + "'", i + 1);
  }
  if (n < 3 || nt < 1) throw IoError(file + ": manifest must declare n >= 3 and nt >= 1");
  while (i < lines.size()) {
    if (blank_or_comment(lines[i])) {
      ++i;
      continue;
    }
    std::istringstream ss(lines[i]);
    std::string key;
    ss >> key;
    if (key == "curve") {
      ++i;
      std::vector<Vec2> verts;
      while (i < lines.size() && verts.size() < n) {
        if (!blank_or_comment(lines[i])) verts.push_back(parse_vertex(lines[i], file, i + 1));
        ++i;
      }
      if (verts.size() != n) throw IoError(file + ": truncated curve block");
      slices.push_back(Chain(std::move(verts)));
    } else if (key == "file") {
      std::string rel;
      ss >> rel;
      if (rel.empty()) throw fail("missing file name", i + 1);
      Chain c = load_curve((dir / rel).string());
      if (c.size() != n) throw fail("referenced curve has wrong vertex count", i + 1);
      slices.push_back(std::move(c));
      ++i;
    } else {
      throw fail("expected 'curve' or 'file' block", i + 1);
    }
  }
  if (slices.size() != nt + 1)
    throw IoError(file + ": expected " + std::to_string(nt + 1) + " slices, found " +
                  std::to_string(slices.size()));
  return PathOfChains(std::move(slices), a, b);
}

void save_path(const PathOfChains& path, const std::string& file) {
  std::ostringstream out;
  out << "# path of closed chains\n";
  out << "n " << path.chain_size() << "\n";
  out << "nt " << path.nt() << "\n";
  out << "a " << format_full(path.param_a()) << "\n";
  out << "b " << format_full(path.param_b()) << "\n";
  for (size_t j = 0; j < path.slice_count(); ++j) {
    out << "curve " << j << "\n";
    for (const Vec2& v : path.slice(j).vertices())
      out << format_full(v.x) << ',' << format_full(v.y) << '\n';
  }
  atomic_write(file, out.str());
}

void save_gradient(const GradientField& grad, const std::string& file) {
  std::ostringstream out;
  out << "# energy gradient dump: per slice, rows of z_x z_y beta xi m h\n";
  out << "n " << grad.n << "\n";
  out << "nt " << grad.nt << "\n";
  for (size_t j = 0; j < grad.slices.size(); ++j) {
    const SliceGradient& s = grad.slices[j];
    out << "slice " << j << "\n";
    for (size_t k = 0; k < grad.n; ++k) {
      out << format_full(s.z[k].x) << ' ' << format_full(s.z[k].y) << ' '
          << format_full(s.beta[k]) << ' ' << format_full(s.xi[k]) << ' '
          << format_full(s.m[k]) << ' ' << format_full(s.h[k]) << '\n';
    }
  }
  atomic_write(file, out.str());
}

GradientField load_gradient(const std::string& file) {
  const auto lines = read_lines(file);
  GradientField grad;
  size_t i = 0;
  for (; i < lines.size(); ++i) {
    if (blank_or_comment(lines[i])) continue;
    std::istringstream ss(lines[i]);
    std::string key;
    ss >> key;
    if (key == "n")
      ss >> grad.n;
    else if (key == "nt")
      ss >> grad.nt;
    else if (key == "slice")
      break;
    else
      throw IoError(file + ": unknown gradient header key '" + key + "'");
    if (!ss) throw IoError(file + ": bad gradient header");
  }
  if (grad.n < 3 || grad.nt < 1) throw IoError(file + ": gradient header incomplete");
  grad.slices.resize(grad.nt + 1);
  size_t next_slice = 0;
  while (i < lines.size()) {
    if (blank_or_comment(lines[i])) {
      ++i;
      continue;
    }
    std::istringstream ss(lines[i]);
    std::string key;
    size_t idx = 0;
    ss >> key >> idx;
    if (key != "slice" || !ss || idx != next_slice || idx > grad.nt)
      throw IoError(file + ": malformed slice header at line " + std::to_string(i + 1));
    SliceGradient& s = grad.slices[idx];
    s.z.resize(grad.n);
    s.beta.resize(grad.n);
    s.xi.resize(grad.n);
    s.m.resize(grad.n);
    s.h.resize(grad.n);
    s.mdot.assign(grad.n, 0.0);
    ++i;
    size_t k = 0;
    while (i < lines.size() && k < grad.n) {
      if (blank_or_comment(lines[i])) {
        ++i;
        continue;
      }
      std::istringstream row(lines[i]);
      if (!(row >> s.z[k].x >> s.z[k].y >> s.beta[k] >> s.xi[k] >> s.m[k] >> s.h[k]))
        throw IoError(file + ": bad gradient row at line " + std::to_string(i + 1));
      ++k;
      ++i;
    }
    if (k != grad.n) throw IoError(file + ": truncated slice block");
    ++next_slice;
  }
  if (next_slice != grad.nt + 1) throw IoError(file + ": missing slices");
  return grad;
}

void save_energy_trace(const std::vector<std::pair<long, double>>& trace,
                       const std::string& file) {
  std::ostringstream out;
  out << "iter,E\n";
  for (const auto& [it, e] : trace) out << it << ',' << format_full(e) << '\n';
  atomic_write(file, out.str());
}

void save_landscape_csv(const std::vector<double>& u, const std::vector<double>& v,
                        const std::vector<double>& energies, const std::string& file) {
  if (energies.size() != u.size() * v.size())
    throw InvalidArgument("landscape grid size mismatch");
  std::ostringstream out;
  out << "uv";
  for (double uu : u) out << ',' << format_full(uu);
  out << '\n';
  for (size_t r = 0; r < v.size(); ++r) {
    out << format_full(v[r]);
    for (size_t c = 0; c < u.size(); ++c) out << ',' << format_full(energies[r * u.size() + c]);
    out << '\n';
  }
  atomic_write(file, out.str());
}

}  // namespace elastica
