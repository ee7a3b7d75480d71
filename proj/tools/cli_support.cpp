#include "cli_support.hpp"

#include <Eigen/Core>
#include <boost/version.hpp>
#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace p3lab::cli {

const char* const kVersion = P3LAB_VERSION;

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

int CsvTable::column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

std::vector<double> CsvTable::numeric_column(const std::string& name) const {
    const int c = column(name);
    if (c < 0) throw CsvError("no column '" + name + "'");
    std::vector<double> out;
    for (const auto& row : rows) {
        const std::string& f = row[c];
        char* end = nullptr;
        const double v = std::strtod(f.c_str(), &end);
        if (f.empty() || *end != '\0') throw CsvError("column '" + name + "': '" + f + "' is not a number");
        out.push_back(v);
    }
    return out;
}

std::string to_csv(const CsvTable& t) {
    std::ostringstream os;
    auto line = [&os](const std::vector<std::string>& f) {
        for (size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
        os << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
    return os.str();
}

void write_csv(const std::string& path, const CsvTable& t) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << to_csv(t);
    if (!f) throw IoError("write to '" + path + "' failed");
}

CsvTable read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open '" + path + "'");
    CsvTable t;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) fields.push_back(cell);
        if (line.back() == ',') fields.emplace_back();
        if (t.header.empty()) {
            t.header = fields;
            continue;
        }
        if (fields.size() != t.header.size())
            throw CsvError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(t.header.size()) +
                           " fields, found " + std::to_string(fields.size()));
        t.rows.push_back(std::move(fields));
    }
    if (t.header.empty()) throw CsvError(path + ": empty CSV");
    if (t.rows.empty()) throw CsvError(path + ": CSV has a header but no rows");
    return t;
}

nlohmann::json build_info() {
    return {
        {"p3lab", kVersion},
        {"boost", BOOST_LIB_VERSION},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION)},
        {"mpfr", mpfr_get_version()},
        {"gmp", gmp_version},
        {"compiler", __VERSION__},
    };
}

void write_sidecar(const std::string& path, nlohmann::json meta) {
    const auto slash = path.find_last_of('/');
    meta["output"] = slash == std::string::npos ? path : path.substr(slash + 1);
    meta["version"] = kVersion;
    meta["build"] = build_info();
    const std::string side = path + ".meta.json";
    std::ofstream f(side);
    if (!f) throw IoError("cannot open '" + side + "' for writing");
    f << meta.dump(2) << '\n';
}

PlotKind parse_plot_kind(const std::string& s) {
    if (s == "line") return PlotKind::line;
    if (s == "heatmap") return PlotKind::heatmap;
    throw CsvError("unknown plot kind '" + s + "'");
}

namespace {

constexpr double W = 640, H = 440, L = 70, R = 150, T = 40, B = 50;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

struct Range {
    double lo = INFINITY, hi = -INFINITY;
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool valid() const { return lo <= hi; }
    double span() const { return hi > lo ? hi - lo : 1; }
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

std::string header(const std::string& title) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
       << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\">" << title << "</text>\n";
    return os.str();
}

std::string axes(const Range& xr, const Range& yr, const std::string& xl, const std::string& yl, bool log_x) {
    std::ostringstream os;
    const double x1 = W - R, y1 = H - B;
    os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << x1 - L << "\" height=\"" << y1 - T
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    auto xlab = [&](double v) { return num(log_x ? std::pow(10, v) : v); };
    os << "<text x=\"" << L << "\" y=\"" << y1 + 18 << "\" text-anchor=\"start\">" << xlab(xr.lo) << "</text>\n"
       << "<text x=\"" << x1 << "\" y=\"" << y1 + 18 << "\" text-anchor=\"end\">" << xlab(xr.hi) << "</text>\n"
       << "<text x=\"" << (L + x1) / 2 << "\" y=\"" << y1 + 36 << "\" text-anchor=\"middle\">" << xl
       << (log_x ? " (log)" : "") << "</text>\n"
       << "<text x=\"" << L - 6 << "\" y=\"" << y1 << "\" text-anchor=\"end\">" << num(yr.lo) << "</text>\n"
       << "<text x=\"" << L - 6 << "\" y=\"" << T + 10 << "\" text-anchor=\"end\">" << num(yr.hi) << "</text>\n"
       << "<text x=\"16\" y=\"" << (T + y1) / 2 << "\" transform=\"rotate(-90 16 " << (T + y1) / 2
       << ")\" text-anchor=\"middle\">" << yl << "</text>\n";
    return os.str();
}

std::string line_plot(const CsvTable& t, const PlotOptions& opt) {
    const std::string xname = opt.x.empty() ? t.header.front() : opt.x;
    std::vector<std::string> ys = opt.y;
    if (ys.empty())
        for (const auto& h : t.header)
            if (h != xname) ys.push_back(h);
    if (ys.empty()) throw CsvError("line plot needs at least one y column");
    std::vector<double> x = t.numeric_column(xname);
    if (opt.log_x)
        for (double& v : x) {
            if (!(v > 0)) throw CsvError("log x axis needs positive x values");
            v = std::log10(v);
        }
    Range xr, yr;
    for (double v : x) xr.add(v);
    std::vector<std::vector<double>> cols;
    for (const auto& y : ys) {
        cols.push_back(t.numeric_column(y));
        for (double v : cols.back()) yr.add(v);
    }
    if (!xr.valid() || !yr.valid()) throw CsvError("no finite values to plot");

    std::ostringstream os;
    os << header(opt.title) << axes(xr, yr, xname, ys.size() == 1 ? ys.front() : "", opt.log_x);
    const double x1 = W - R, y1 = H - B;
    for (size_t c = 0; c < cols.size(); ++c) {
        const char* colour = kPalette[c % std::size(kPalette)];
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < x.size(); ++i) {
            if (!std::isfinite(x[i]) || !std::isfinite(cols[c][i])) continue;
            const double px = L + (x[i] - xr.lo) / xr.span() * (x1 - L);
            const double py = y1 - (cols[c][i] - yr.lo) / yr.span() * (y1 - T);
            os << num(px) << ',' << num(py) << ' ';
        }
        os << "\"/>\n";
        const double ly = T + 14 + 18 * static_cast<double>(c);
        os << "<line x1=\"" << x1 + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << x1 + 30 << "\" y2=\"" << ly - 4
           << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"" << x1 + 36 << "\" y=\"" << ly << "\">" << ys[c] << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

// Linear blend through a dark-blue to yellow ramp.
std::string ramp(double f) {
    static const double stops[][3] = {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
    f = std::clamp(f, 0.0, 1.0) * 4;
    const int i = std::min(3, static_cast<int>(f));
    const double w = f - i;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(stops[i][0] + w * (stops[i + 1][0] - stops[i][0])),
                  static_cast<int>(stops[i][1] + w * (stops[i + 1][1] - stops[i][1])),
                  static_cast<int>(stops[i][2] + w * (stops[i + 1][2] - stops[i][2])));
    return buf;
}

std::string heatmap(const CsvTable& t, const PlotOptions& opt) {
    const std::vector<double> u = t.numeric_column(opt.u), v = t.numeric_column(opt.v), z = t.numeric_column(opt.value);
    std::set<double> us(u.begin(), u.end()), vs(v.begin(), v.end());
    std::vector<double> ux(us.begin(), us.end()), vx(vs.begin(), vs.end());
    std::map<std::pair<double, double>, double> cell;
    Range zr;
    for (size_t i = 0; i < u.size(); ++i) {
        cell[{u[i], v[i]}] = z[i];
        zr.add(z[i]);
    }
    if (!zr.valid()) throw CsvError("no finite values to plot");
    Range ur{ux.front(), ux.back()}, vr{vx.front(), vx.back()};

    std::ostringstream os;
    os << header(opt.title) << axes(ur, vr, opt.u, opt.v, false);
    const double x1 = W - R, y1 = H - B;
    const double cw = (x1 - L) / ux.size(), ch = (y1 - T) / vx.size();
    for (size_t i = 0; i < ux.size(); ++i)
        for (size_t j = 0; j < vx.size(); ++j) {
            auto it = cell.find({ux[i], vx[j]});
            if (it == cell.end() || !std::isfinite(it->second)) continue;
            os << "<rect x=\"" << num(L + i * cw) << "\" y=\"" << num(y1 - (j + 1) * ch) << "\" width=\"" << num(cw)
               << "\" height=\"" << num(ch) << "\" fill=\"" << ramp((it->second - zr.lo) / zr.span()) << "\"/>\n";
        }
    for (int s = 0; s < 20; ++s)
        os << "<rect x=\"" << x1 + 20 << "\" y=\"" << num(y1 - (s + 1) * (y1 - T) / 20) << "\" width=\"20\" height=\""
           << num((y1 - T) / 20 + 0.5) << "\" fill=\"" << ramp((s + 0.5) / 20) << "\"/>\n";
    os << "<text x=\"" << x1 + 46 << "\" y=\"" << y1 << "\">" << num(zr.lo) << "</text>\n"
       << "<text x=\"" << x1 + 46 << "\" y=\"" << T + 10 << "\">" << num(zr.hi) << "</text>\n"
       << "<text x=\"" << x1 + 46 << "\" y=\"" << (T + y1) / 2 << "\">" << opt.value << "</text>\n</svg>\n";
    return os.str();
}

}  // namespace

std::string render_svg(const CsvTable& t, PlotKind kind, const PlotOptions& opt) {
    if (t.header.empty() || t.rows.empty()) throw CsvError("empty CSV");
    return kind == PlotKind::line ? line_plot(t, opt) : heatmap(t, opt);
}

void emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path, const PlotOptions& opt) {
    const std::string svg = render_svg(read_csv(csv_path), kind, opt);
    std::ofstream f(svg_path);
    if (!f) throw IoError("cannot open '" + svg_path + "' for writing");
    f << svg;
}

nlohmann::json error_record(const std::string& kind, ExitCode code, const std::string& message,
                            const std::string& subcommand) {
    return {{"status", "error"}, {"kind", kind}, {"exit_code", static_cast<int>(code)}, {"message", message},
            {"subcommand", subcommand}, {"version", kVersion}};
}

}  // namespace p3lab::cli
