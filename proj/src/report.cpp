#include "ncdoa/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ncdoa {

namespace {

void write_text(const std::string& text, const std::filesystem::path& path)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("failed writing '" + path.string() + "'");
}

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c",
                                              "#9467bd", "#ff7f0e", "#8c564b"};

} // namespace

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string format_csv(std::span<const ExperimentResult> results)
{
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : results) {
        out += to_string(r.method);
        out += ',';
        out += r.sweep_param;
        out += ',';
        out += format_double(r.sweep_value);
        out += ',';
        out += format_double(r.mse_deg2);
        out += ',';
        out += format_double(r.mean_runtime_s);
        out += ',';
        out += std::to_string(r.num_failures);
        out += ',';
        out += std::to_string(r.num_runs);
        out += ',';
        out += std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

void write_csv(std::span<const ExperimentResult> results, const std::filesystem::path& path)
{
    write_text(format_csv(results), path);
}

std::string format_plot(std::span<const ExperimentResult> results)
{
    constexpr double width = 640.0, height = 420.0;
    constexpr double left = 70.0, right = 190.0, top = 30.0, bottom = 50.0;
    constexpr double mse_floor = 1e-6;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    std::map<Method, std::vector<std::pair<double, double>>> series;
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& r : results) {
        const double y = std::log10(std::max(r.mse_deg2, mse_floor));
        series[r.method].emplace_back(r.sweep_value, y);
        xmin = std::min(xmin, r.sweep_value);
        xmax = std::max(xmax, r.sweep_value);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (results.empty()) {
        xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    }
    ymin = std::floor(ymin);
    ymax = std::ceil(ymax);
    if (ymax <= ymin) ymax = ymin + 1.0;
    if (xmax <= xmin) xmax = xmin + 1.0;

    auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double d = ymin; d <= ymax + 1e-9; d += 1.0) {
        svg << "<line x1=\"" << left << "\" x2=\"" << left + pw << "\" y1=\"" << sy(d)
            << "\" y2=\"" << sy(d) << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << left - 6 << "\" y=\"" << sy(d) + 4
            << "\" text-anchor=\"end\">1e" << static_cast<int>(d) << "</text>\n";
    }
    std::vector<double> xs;
    for (const auto& r : results) xs.push_back(r.sweep_value);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (double x : xs) {
        svg << "<text x=\"" << sx(x) << "\" y=\"" << top + ph + 18
            << "\" text-anchor=\"middle\">" << format_double(x) << "</text>\n";
    }
    const std::string xlabel = results.empty() ? "" : results.front().sweep_param;
    svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    svg << "<text x=\"16\" y=\"" << top + ph / 2 << "\" transform=\"rotate(-90 16 "
        << top + ph / 2 << ")\" text-anchor=\"middle\">MSE (deg^2)</text>\n";

    std::size_t idx = 0;
    for (auto& [method, pts] : series) {
        std::sort(pts.begin(), pts.end());
        const char* colour = kPalette[idx % kPalette.size()];
        svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : pts) svg << sx(x) << ',' << sy(y) << ' ';
        svg << "\"/>\n";
        for (const auto& [x, y] : pts) {
            svg << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"3\" fill=\""
                << colour << "\"/>\n";
        }
        const double ly = top + 14.0 + 18.0 * static_cast<double>(idx);
        svg << "<line x1=\"" << left + pw + 10 << "\" x2=\"" << left + pw + 30 << "\" y1=\"" << ly
            << "\" y2=\"" << ly << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << left + pw + 34 << "\" y=\"" << ly + 4 << "\">" << to_string(method)
            << "</text>\n";
        ++idx;
    }
    svg << "</svg>\n";
    return svg.str();
}

void render_plot(std::span<const ExperimentResult> results, const std::filesystem::path& path)
{
    write_text(format_plot(results), path);
}

} // namespace ncdoa
