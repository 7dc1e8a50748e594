#pragma once

#include <array>
#include <string>
#include <vector>

#include "prism/image.hpp"

namespace prism {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    bool draw_line = true;   // false: scatter only
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
    int width = 640;
    int height = 480;
};

// Line/scatter chart rendered onto an RGB canvas with a built-in 5x7 font.
ImageRGB render_plot(const PlotSpec& spec);
void save_plot(const PlotSpec& spec, const std::string& path);

// 5x7 bitmap text, scale in integer pixel multiples
void draw_text(ImageRGB& canvas, int y, int x, const std::string& text,
               const std::array<double, 3>& color, int scale = 1);
int text_width(const std::string& text, int scale = 1);

}  // namespace prism
