/*
 * Copyright 2026 The decdirac Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <decdirac/convergence.hpp>
#include <decdirac/error.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace decdirac {

namespace detail {

struct PlotSeries {
    std::string name;
    std::string color;
    std::vector<std::pair<double, double>> points; // (h, error), both > 0
};

class LogLogFrame {
public:
    static constexpr double kWidth = 640.0;
    static constexpr double kHeight = 480.0;
    static constexpr double kLeft = 80.0;
    static constexpr double kRight = 160.0;
    static constexpr double kTop = 30.0;
    static constexpr double kBottom = 60.0;

    LogLogFrame(double x0, double x1, double y0, double y1)
        : m_x0(std::floor(std::log10(x0)))
        , m_x1(std::ceil(std::log10(x1)))
        , m_y0(std::floor(std::log10(y0)))
        , m_y1(std::ceil(std::log10(y1)))
    {
        if (m_x1 <= m_x0) m_x1 = m_x0 + 1.0;
        if (m_y1 <= m_y0) m_y1 = m_y0 + 1.0;
    }

    double px(double x) const { return kLeft + (std::log10(x) - m_x0) / (m_x1 - m_x0) * (kWidth - kLeft - kRight); }
    double py(double y) const
    {
        return kHeight - kBottom - (std::log10(y) - m_y0) / (m_y1 - m_y0) * (kHeight - kTop - kBottom);
    }
    int x_decades_begin() const { return static_cast<int>(m_x0); }
    int x_decades_end() const { return static_cast<int>(m_x1); }
    int y_decades_begin() const { return static_cast<int>(m_y0); }
    int y_decades_end() const { return static_cast<int>(m_y1); }

private:
    double m_x0, m_x1, m_y0, m_y1;
};

} // namespace detail

///
/// Log-log SVG of the error norms against h, with slope-1 and slope-2 guide lines anchored
/// at the coarsest err_l2 point. Output depends only on the records.
///
inline void emit_plot(const std::vector<ConvergenceRecord>& records, std::ostream& out)
{
    if (records.empty()) throw Error(ErrorCode::InvalidArgument, "no records to plot");

    std::vector<detail::PlotSeries> series = {{"err_l2", "#1f77b4", {}}, {"err_hlambda", "#d62728", {}},
                                              {"pij_u", "#2ca02c", {}}};
    for (const ConvergenceRecord& r : records) {
        if (!(r.h > 0.0)) throw Error(ErrorCode::InvalidArgument, "mesh width must be positive");
        if (r.err_l2 > 0.0) series[0].points.emplace_back(r.h, r.err_l2);
        if (r.err_hlambda > 0.0) series[1].points.emplace_back(r.h, r.err_hlambda);
        if (r.pij_u && *r.pij_u > 0.0) series[2].points.emplace_back(r.h, *r.pij_u);
    }
    std::erase_if(series, [](const detail::PlotSeries& s) { return s.points.empty(); });

    double hmin = records.front().h, hmax = hmin;
    for (const ConvergenceRecord& r : records) {
        hmin = std::min(hmin, r.h);
        hmax = std::max(hmax, r.h);
    }

    // Guides pass through the coarsest point of the first series.
    std::vector<detail::PlotSeries> guides;
    if (!series.empty()) {
        const auto coarsest = *std::max_element(series.front().points.begin(), series.front().points.end());
        for (int slope : {1, 2}) {
            detail::PlotSeries g{"slope " + std::to_string(slope), "#7f7f7f", {}};
            for (double h : {hmax, hmin}) {
                g.points.emplace_back(h, 0.5 * coarsest.second * std::pow(h / coarsest.first, slope));
            }
            guides.push_back(std::move(g));
        }
    }

    double emin = 1.0, emax = 1.0;
    bool first = true;
    for (const auto* group : {&series, &guides}) {
        for (const detail::PlotSeries& s : *group) {
            for (const auto& [h, e] : s.points) {
                emin = first ? e : std::min(emin, e);
                emax = first ? e : std::max(emax, e);
                first = false;
            }
        }
    }
    const detail::LogLogFrame frame(hmin, hmax, emin, emax);
    using F = detail::LogLogFrame;

    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss << std::fixed << std::setprecision(2);
    ss << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << F::kWidth << "\" height=\"" << F::kHeight
       << "\" viewBox=\"0 0 " << F::kWidth << ' ' << F::kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    ss << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const double left = F::kLeft, right = F::kWidth - F::kRight;
    const double top = F::kTop, bottom = F::kHeight - F::kBottom;
    ss << "<g class=\"axes\" stroke=\"#cccccc\">\n";
    for (int k = frame.x_decades_begin(); k <= frame.x_decades_end(); ++k) {
        const double x = frame.px(std::pow(10.0, k));
        ss << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\"" << bottom << "\"/>\n";
        ss << "<text x=\"" << x << "\" y=\"" << bottom + 18.0 << "\" text-anchor=\"middle\" stroke=\"none\">1e" << k
           << "</text>\n";
    }
    for (int k = frame.y_decades_begin(); k <= frame.y_decades_end(); ++k) {
        const double y = frame.py(std::pow(10.0, k));
        ss << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << right << "\" y2=\"" << y << "\"/>\n";
        ss << "<text x=\"" << left - 6.0 << "\" y=\"" << y + 4.0 << "\" text-anchor=\"end\" stroke=\"none\">1e" << k
           << "</text>\n";
    }
    ss << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left << "\" height=\"" << bottom - top
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    ss << "</g>\n";
    ss << "<text x=\"" << 0.5 * (left + right) << "\" y=\"" << F::kHeight - 15.0
       << "\" text-anchor=\"middle\">h</text>\n";
    ss << "<text x=\"20\" y=\"" << 0.5 * (top + bottom) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
       << 0.5 * (top + bottom) << ")\">error</text>\n";

    const auto polyline = [&](const detail::PlotSeries& s, const char* cls, const char* extra) {
        ss << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\"" << extra
           << " points=\"";
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            ss << (i ? " " : "") << frame.px(s.points[i].first) << ',' << frame.py(s.points[i].second);
        }
        ss << "\"/>\n";
    };
    for (const detail::PlotSeries& g : guides) polyline(g, "guide", " stroke-dasharray=\"6,4\"");
    for (const detail::PlotSeries& s : series) {
        polyline(s, "series", "");
        for (const auto& [h, e] : s.points) {
            ss << "<circle class=\"marker\" cx=\"" << frame.px(h) << "\" cy=\"" << frame.py(e) << "\" r=\"3\" fill=\""
               << s.color << "\"/>\n";
        }
    }

    double ly = top + 10.0;
    const double lx = right + 15.0;
    for (const auto* group : {&series, &guides}) {
        for (const detail::PlotSeries& s : *group) {
            ss << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 25.0 << "\" y2=\"" << ly
               << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
            ss << "<text x=\"" << lx + 32.0 << "\" y=\"" << ly + 4.0 << "\">" << s.name << "</text>\n";
            ly += 20.0;
        }
    }
    ss << "</svg>\n";
    out << ss.str();
}

inline void emit_plot(const std::vector<ConvergenceRecord>& records, const std::filesystem::path& path)
{
    std::ostringstream ss;
    emit_plot(records, ss);
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write plot '" + path.string() + "'");
    out << ss.str();
    if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

} // namespace decdirac
