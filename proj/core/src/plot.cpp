#include "prism/plot.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>

#include "prism/errors.hpp"
#include "prism/image_io.hpp"

namespace prism {

namespace {

using Glyph = std::array<const char*, 7>;

const std::map<char, Glyph>& font() {
    static const std::map<char, Glyph> table = {
        {'0', {" ### ", "#   #", "#  ##", "# # #", "##  #", "#   #", " ### "}},
        {'1', {"  #  ", " ##  ", "  #  ", "  #  ", "  #  ", "  #  ", " ### "}},
        {'2', {" ### ", "#   #", "    #", "   # ", "  #  ", " #   ", "#####"}},
        {'3', {" ### ", "#   #", "    #", "  ## ", "    #", "#   #", " ### "}},
        {'4', {"   # ", "  ## ", " # # ", "#  # ", "#####", "   # ", "   # "}},
        {'5', {"#####", "#    ", "#### ", "    #", "    #", "#   #", " ### "}},
        {'6', {" ### ", "#    ", "#    ", "#### ", "#   #", "#   #", " ### "}},
        {'7', {"#####", "    #", "   # ", "  #  ", "  #  ", "  #  ", "  #  "}},
        {'8', {" ### ", "#   #", "#   #", " ### ", "#   #", "#   #", " ### "}},
        {'9', {" ### ", "#   #", "#   #", " ####", "    #", "    #", " ### "}},
        {'A', {" ### ", "#   #", "#   #", "#####", "#   #", "#   #", "#   #"}},
        {'B', {"#### ", "#   #", "#   #", "#### ", "#   #", "#   #", "#### "}},
        {'C', {" ### ", "#   #", "#    ", "#    ", "#    ", "#   #", " ### "}},
        {'D', {"#### ", "#   #", "#   #", "#   #", "#   #", "#   #", "#### "}},
        {'E', {"#####", "#    ", "#    ", "#### ", "#    ", "#    ", "#####"}},
        {'F', {"#####", "#    ", "#    ", "#### ", "#    ", "#    ", "#    "}},
        {'G', {" ### ", "#   #", "#    ", "# ###", "#   #", "#   #", " ### "}},
        {'H', {"#   #", "#   #", "#   #", "#####", "#   #", "#   #", "#   #"}},
        {'I', {" ### ", "  #  ", "  #  ", "  #  ", "  #  ", "  #  ", " ### "}},
        {'J', {"  ###", "   # ", "   # ", "   # ", "   # ", "#  # ", " ##  "}},
        {'K', {"#   #", "#  # ", "# #  ", "##   ", "# #  ", "#  # ", "#   #"}},
        {'L', {"#    ", "#    ", "#    ", "#    ", "#    ", "#    ", "#####"}},
        {'M', {"#   #", "## ##", "# # #", "# # #", "#   #", "#   #", "#   #"}},
        {'N', {"#   #", "##  #", "# # #", "#  ##", "#   #", "#   #", "#   #"}},
        {'O', {" ### ", "#   #", "#   #", "#   #", "#   #", "#   #", " ### "}},
        {'P', {"#### ", "#   #", "#   #", "#### ", "#    ", "#    ", "#    "}},
        {'Q', {" ### ", "#   #", "#   #", "#   #", "# # #", "#  # ", " ## #"}},
        {'R', {"#### ", "#   #", "#   #", "#### ", "# #  ", "#  # ", "#   #"}},
        {'S', {" ####", "#    ", "#    ", " ### ", "    #", "    #", "#### "}},
        {'T', {"#####", "  #  ", "  #  ", "  #  ", "  #  ", "  #  ", "  #  "}},
        {'U', {"#   #", "#   #", "#   #", "#   #", "#   #", "#   #", " ### "}},
        {'V', {"#   #", "#   #", "#   #", "#   #", "#   #", " # # ", "  #  "}},
        {'W', {"#   #", "#   #", "#   #", "# # #", "# # #", "## ##", "#   #"}},
        {'X', {"#   #", "#   #", " # # ", "  #  ", " # # ", "#   #", "#   #"}},
        {'Y', {"#   #", "#   #", " # # ", "  #  ", "  #  ", "  #  ", "  #  "}},
        {'Z', {"#####", "    #", "   # ", "  #  ", " #   ", "#    ", "#####"}},
        {'.', {"     ", "     ", "     ", "     ", "     ", "  ## ", "  ## "}},
        {',', {"     ", "     ", "     ", "     ", "  ## ", "   # ", "  #  "}},
        {'-', {"     ", "     ", "     ", " ### ", "     ", "     ", "     "}},
        {'+', {"     ", "  #  ", "  #  ", "#####", "  #  ", "  #  ", "     "}},
        {'=', {"     ", "     ", "#####", "     ", "#####", "     ", "     "}},
        {':', {"     ", "  ## ", "  ## ", "     ", "  ## ", "  ## ", "     "}},
        {'/', {"    #", "    #", "   # ", "  #  ", " #   ", "#    ", "#    "}},
        {'_', {"     ", "     ", "     ", "     ", "     ", "     ", "#####"}},
        {'%', {"##   ", "##  #", "   # ", "  #  ", " #   ", "#  ##", "   ##"}},
        {'(', {"   # ", "  #  ", " #   ", " #   ", " #   ", "  #  ", "   # "}},
        {')', {" #   ", "  #  ", "   # ", "   # ", "   # ", "  #  ", " #   "}},
        {'e', {"     ", "     ", " ### ", "#   #", "#####", "#    ", " ### "}},
        {' ', {"     ", "     ", "     ", "     ", "     ", "     ", "     "}},
    };
    return table;
}

void put_pixel(ImageRGB& canvas, int y, int x, const std::array<double, 3>& color) {
    if (y < 0 || x < 0 || y >= canvas.height() || x >= canvas.width()) return;
    for (int c = 0; c < 3; ++c) canvas.at(y, x, c) = color[static_cast<std::size_t>(c)];
}

void fill_rect(ImageRGB& canvas, int y0, int x0, int y1, int x1,
               const std::array<double, 3>& color) {
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) put_pixel(canvas, y, x, color);
}

void draw_segment(ImageRGB& canvas, int y0, int x0, int y1, int x1,
                  const std::array<double, 3>& color) {
    const int dx = std::abs(x1 - x0);
    const int dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1;
    const int sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    int x = x0, y = y0;
    while (true) {
        put_pixel(canvas, y, x, color);
        if (x == x1 && y == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y += sy;
        }
    }
}

std::string format_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

constexpr std::array<double, 3> kBlack{0.0, 0.0, 0.0};
constexpr std::array<double, 3> kGray{0.82, 0.82, 0.85};

const std::vector<std::array<double, 3>>& palette() {
    static const std::vector<std::array<double, 3>> colors = {
        {0.13, 0.32, 0.70}, {0.82, 0.20, 0.16}, {0.16, 0.55, 0.25},
        {0.90, 0.55, 0.10}, {0.48, 0.23, 0.60}, {0.10, 0.60, 0.62},
    };
    return colors;
}

}  // namespace

int text_width(const std::string& text, int scale) {
    return static_cast<int>(text.size()) * 6 * scale;
}

void draw_text(ImageRGB& canvas, int y, int x, const std::string& text,
               const std::array<double, 3>& color, int scale) {
    int cx = x;
    for (char raw : text) {
        char c = raw;
        if (c >= 'a' && c <= 'z' && c != 'e') c = static_cast<char>(std::toupper(c));
        auto it = font().find(c);
        if (it == font().end()) it = font().find(' ');
        const Glyph& g = it->second;
        for (int gy = 0; gy < 7; ++gy) {
            for (int gx = 0; gx < 5; ++gx) {
                if (g[static_cast<std::size_t>(gy)][gx] != '#') continue;
                fill_rect(canvas, y + gy * scale, cx + gx * scale, y + (gy + 1) * scale - 1,
                          cx + (gx + 1) * scale - 1, color);
            }
        }
        cx += 6 * scale;
    }
}

ImageRGB render_plot(const PlotSpec& spec) {
    const int W = spec.width;
    const int H = spec.height;
    ImageRGB canvas(H, W, 1.0);

    const int left = 70, right = 20, top = 34, bottom = 52;
    const int x0 = left, x1 = W - right;
    const int y0 = top, y1 = H - bottom;

    // data range with padding
    double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
    bool first = true;
    for (const auto& s : spec.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (first) {
                min_x = max_x = s.x[i];
                min_y = max_y = s.y[i];
                first = false;
            }
            min_x = std::min(min_x, s.x[i]);
            max_x = std::max(max_x, s.x[i]);
            min_y = std::min(min_y, s.y[i]);
            max_y = std::max(max_y, s.y[i]);
        }
    }
    if (max_x - min_x < 1e-12) {
        min_x -= 0.5;
        max_x += 0.5;
    }
    if (max_y - min_y < 1e-12) {
        min_y -= 0.5;
        max_y += 0.5;
    }
    const double pad_x = 0.05 * (max_x - min_x);
    const double pad_y = 0.08 * (max_y - min_y);
    min_x -= pad_x;
    max_x += pad_x;
    min_y -= pad_y;
    max_y += pad_y;

    auto to_px = [&](double vx) {
        return x0 + static_cast<int>((vx - min_x) / (max_x - min_x) * (x1 - x0));
    };
    auto to_py = [&](double vy) {
        return y1 - static_cast<int>((vy - min_y) / (max_y - min_y) * (y1 - y0));
    };

    // grid and ticks
    const int n_ticks = 5;
    for (int i = 0; i <= n_ticks; ++i) {
        const double fx = min_x + (max_x - min_x) * i / n_ticks;
        const double fy = min_y + (max_y - min_y) * i / n_ticks;
        const int px = to_px(fx);
        const int py = to_py(fy);
        draw_segment(canvas, y0, px, y1, px, kGray);
        draw_segment(canvas, py, x0, py, x1, kGray);
        const std::string xs = format_tick(fx);
        draw_text(canvas, y1 + 8, px - text_width(xs) / 2, xs, kBlack);
        const std::string ys = format_tick(fy);
        draw_text(canvas, py - 3, x0 - 6 - text_width(ys), ys, kBlack);
    }

    // axes
    draw_segment(canvas, y1, x0, y1, x1, kBlack);
    draw_segment(canvas, y0, x0, y1, x0, kBlack);

    // series
    for (std::size_t si = 0; si < spec.series.size(); ++si) {
        const auto& s = spec.series[si];
        const auto& color = palette()[si % palette().size()];
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const int px = to_px(s.x[i]);
            const int py = to_py(s.y[i]);
            fill_rect(canvas, py - 2, px - 2, py + 2, px + 2, color);
            if (s.draw_line && i > 0) {
                draw_segment(canvas, to_py(s.y[i - 1]), to_px(s.x[i - 1]), py, px, color);
            }
        }
    }

    // title, labels, legend
    draw_text(canvas, 8, (W - text_width(spec.title, 2)) / 2, spec.title, kBlack, 2);
    draw_text(canvas, H - 16, (W - text_width(spec.x_label)) / 2, spec.x_label, kBlack);
    draw_text(canvas, y0 - 12, x0, spec.y_label, kBlack);
    if (spec.series.size() > 1 || (spec.series.size() == 1 && !spec.series[0].name.empty())) {
        int ly = y0 + 6;
        for (std::size_t si = 0; si < spec.series.size(); ++si) {
            const auto& color = palette()[si % palette().size()];
            const int lx = x1 - 120;
            fill_rect(canvas, ly, lx, ly + 6, lx + 6, color);
            draw_text(canvas, ly, lx + 10, spec.series[si].name, kBlack);
            ly += 12;
        }
    }
    return canvas;
}

void save_plot(const PlotSpec& spec, const std::string& path) {
    save_image(render_plot(spec), path);
}

}  // namespace prism
