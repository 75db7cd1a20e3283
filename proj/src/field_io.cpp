#include "tdnls/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tdnls/errors.hpp"

namespace tdnls {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ','))
    out.push_back(cell);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

double to_number(const std::string& text, long line) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0')
    throw ConfigError("line " + std::to_string(line) + ": '" + text + "' is not a number");
  return v;
}

ComplexField finish_slice(double t, const std::vector<double>& xs, std::vector<cdouble> samples) {
  const std::size_t n = xs.size();
  if (n < 2)
    throw ConfigError("slice at t = " + format_double(t) + " has fewer than two points");
  const double h = xs[1] - xs[0];
  for (std::size_t j = 1; j < n; ++j) {
    const double expect = xs[0] + static_cast<double>(j) * h;
    if (std::abs(xs[j] - expect) > 1e-9 * std::max(1.0, std::abs(h) * static_cast<double>(n)))
      throw ConfigError("slice at t = " + format_double(t) + " is not on a uniform grid");
  }
  ComplexField f{GridSpec{xs[0], xs[0] + static_cast<double>(n) * h, static_cast<int>(n)}, std::move(samples), t};
  f.grid.validate();
  f.validate();
  return f;
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_fields_csv(std::ostream& os, const std::vector<ComplexField>& slices, bool with_abs) {
  os << (with_abs ? "t,x,re,im,abs\n" : "t,x,re,im\n");
  for (const auto& f : slices) {
    const std::string t = format_double(f.time);
    for (int j = 0; j < f.grid.n; ++j) {
      const cdouble z = f.samples[j];
      os << t << ',' << format_double(f.grid.x(j)) << ',' << format_double(z.real()) << ','
         << format_double(z.imag());
      if (with_abs)
        os << ',' << format_double(std::abs(z));
      os << '\n';
    }
  }
}

void write_fields_csv(const std::string& path, const std::vector<ComplexField>& slices, bool with_abs) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw ConfigError("cannot open '" + path + "' for writing");
  write_fields_csv(os, slices, with_abs);
  if (!os)
    throw ConfigError("failed writing '" + path + "'");
}

std::vector<ComplexField> read_fields_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw ConfigError("empty field file");
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  const auto header = split(line);
  int ct = -1, cx = -1, cre = -1, cim = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string& h = header[c];
    if (h == "t")
      ct = static_cast<int>(c);
    else if (h == "x")
      cx = static_cast<int>(c);
    else if (h == "re")
      cre = static_cast<int>(c);
    else if (h == "im")
      cim = static_cast<int>(c);
  }
  if (ct < 0 || cx < 0 || cre < 0 || cim < 0)
    throw ConfigError("field file header must contain t,x,re,im");

  std::vector<ComplexField> out;
  std::vector<double> xs;
  std::vector<cdouble> samples;
  double t_cur = 0.0;
  long lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw ConfigError("line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                        " columns");
    const double t = to_number(cells[ct], lineno);
    if (!xs.empty() && t != t_cur) {
      out.push_back(finish_slice(t_cur, xs, std::move(samples)));
      xs.clear();
      samples.clear();
    }
    t_cur = t;
    xs.push_back(to_number(cells[cx], lineno));
    samples.emplace_back(to_number(cells[cre], lineno), to_number(cells[cim], lineno));
  }
  if (!xs.empty())
    out.push_back(finish_slice(t_cur, xs, std::move(samples)));
  if (out.empty())
    throw ConfigError("field file has no data rows");
  return out;
}

std::vector<ComplexField> read_fields_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw ConfigError("cannot open '" + path + "'");
  return read_fields_csv(is);
}

} // namespace tdnls
