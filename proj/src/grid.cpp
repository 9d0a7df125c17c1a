#include "gridnav/grid.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gridnav/rng.hpp"

namespace gridnav {

namespace {

constexpr int kPlacementAttempts = 1000;

// Neighbor expansion order for BFS and everything else that enumerates
// actions: Up, Down, Left, Right (the canonical action encoding).
constexpr int kRowDelta[kNumActions] = {1, -1, 0, 0};
constexpr int kColDelta[kNumActions] = {0, 0, -1, 1};

bool reachable(int width, int height, GridPos start, GridPos goal,
               const std::vector<std::uint8_t>& mask) {
    std::vector<std::uint8_t> seen(mask.size(), 0);
    std::deque<GridPos> queue{start};
    seen[start.row * width + start.col] = 1;
    while (!queue.empty()) {
        const GridPos p = queue.front();
        queue.pop_front();
        if (p == goal) return true;
        for (int a = 0; a < kNumActions; ++a) {
            const GridPos n{p.row + kRowDelta[a], p.col + kColDelta[a]};
            if (n.row < 0 || n.row >= height || n.col < 0 || n.col >= width) continue;
            const int idx = n.row * width + n.col;
            if (seen[idx] || mask[idx]) continue;
            seen[idx] = 1;
            queue.push_back(n);
        }
    }
    return false;
}

}  // namespace

Action action_from_index(int index) {
    if (index < 0 || index >= kNumActions)
        throw std::invalid_argument("action index out of range");
    return static_cast<Action>(index);
}

const char* action_name(Action a) {
    switch (a) {
        case Action::Up: return "Up";
        case Action::Down: return "Down";
        case Action::Left: return "Left";
        case Action::Right: return "Right";
    }
    return "?";
}

GridPos apply_action(GridPos p, Action a) {
    const int i = static_cast<int>(a);
    return {p.row + kRowDelta[i], p.col + kColDelta[i]};
}

GridWorld::GridWorld(int width, int height, GridPos start, GridPos goal,
                     const std::vector<GridPos>& obstacles, int max_steps,
                     RewardSpec rewards)
    : width_(width),
      height_(height),
      start_(start),
      goal_(goal),
      max_steps_(max_steps),
      rewards_(rewards) {
    if (width < 2 || height < 2)
        throw std::invalid_argument("grid dimensions must be at least 2x2");
    if (max_steps < 1)
        throw std::invalid_argument("max_steps must be positive");
    if (!in_bounds(start) || !in_bounds(goal))
        throw std::invalid_argument("start/goal outside the grid");
    if (start == goal)
        throw std::invalid_argument("start and goal must differ");

    mask_.assign(static_cast<std::size_t>(width) * height, 0);
    for (const GridPos& p : obstacles) {
        if (!in_bounds(p)) throw std::invalid_argument("obstacle outside the grid");
        if (p == start_ || p == goal_)
            throw std::invalid_argument("obstacle on start or goal");
        if (!mask_[cell_index(p)]) {
            mask_[cell_index(p)] = 1;
            ++obstacle_count_;
        }
    }
    if (obstacle_count_ > cell_count() - 2)
        throw std::invalid_argument("too many obstacles");
    if (!reachable(width_, height_, start_, goal_, mask_))
        throw std::invalid_argument("goal unreachable from start");
}

std::vector<GridPos> GridWorld::obstacles() const {
    std::vector<GridPos> out;
    out.reserve(obstacle_count_);
    for (int row = 0; row < height_; ++row)
        for (int col = 0; col < width_; ++col)
            if (mask_[row * width_ + col]) out.push_back({row, col});
    return out;
}

GridWorld generate_world(int width, int height, int obstacle_count,
                         std::uint64_t seed, int max_steps, RewardSpec rewards) {
    if (width < 2 || height < 2)
        throw std::invalid_argument("grid dimensions must be at least 2x2");
    if (obstacle_count < 0 || obstacle_count > width * height - 2)
        throw std::invalid_argument("obstacle_count out of range");

    const GridPos start{0, 0};
    const GridPos goal{height - 1, width - 1};

    std::vector<int> candidates;
    candidates.reserve(static_cast<std::size_t>(width) * height - 2);
    for (int idx = 0; idx < width * height; ++idx) {
        const GridPos p{idx / width, idx % width};
        if (p == start || p == goal) continue;
        candidates.push_back(idx);
    }

    Rng rng(seed);
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
        // Partial Fisher-Yates: the first obstacle_count entries are a
        // uniform sample without replacement.
        std::vector<int> cells = candidates;
        for (int i = 0; i < obstacle_count; ++i) {
            const int j = i + rng.uniform_int(static_cast<int>(cells.size()) - i);
            std::swap(cells[i], cells[j]);
        }
        std::vector<GridPos> obstacles;
        obstacles.reserve(obstacle_count);
        for (int i = 0; i < obstacle_count; ++i)
            obstacles.push_back({cells[i] / width, cells[i] % width});

        std::vector<std::uint8_t> mask(static_cast<std::size_t>(width) * height, 0);
        for (const GridPos& p : obstacles) mask[p.row * width + p.col] = 1;
        if (reachable(width, height, start, goal, mask))
            return GridWorld(width, height, start, goal, obstacles, max_steps, rewards);
    }
    throw std::runtime_error("obstacle density infeasible: no reachable layout in " +
                             std::to_string(kPlacementAttempts) + " attempts");
}

StepOutcome step(const GridWorld& world, GridPos pos, Action action) {
    if (!world.in_bounds(pos) || world.is_obstacle(pos))
        throw std::invalid_argument("step from an invalid position");

    StepOutcome out;
    const GridPos target = apply_action(pos, action);
    if (!world.in_bounds(target) || world.is_obstacle(target)) {
        out.next = pos;
        out.collided = true;
    } else {
        out.next = target;
    }
    out.reached_goal = (out.next == world.goal());
    out.done = out.reached_goal;
    const RewardSpec& r = world.rewards();
    out.reward = r.step_cost + (out.collided ? r.collision_penalty : 0.0) +
                 (out.reached_goal ? r.goal_bonus : 0.0);
    return out;
}

std::vector<double> encode_state(const GridWorld& world, GridPos pos) {
    std::vector<double> v(world.cell_count(), 0.0);
    encode_state_into(world, pos, v.data());
    return v;
}

void encode_state_into(const GridWorld& world, GridPos pos, double* out) {
    if (!world.in_bounds(pos))
        throw std::invalid_argument("encode_state: position outside the grid");
    std::fill(out, out + world.cell_count(), 0.0);
    out[world.cell_index(pos)] = 1.0;
}

PathResult bfs_shortest_path(const GridWorld& world) {
    const int n = world.cell_count();
    std::vector<int> parent(n, -2);  // -2 unseen, -1 root
    std::deque<GridPos> queue{world.start()};
    parent[world.cell_index(world.start())] = -1;

    bool found = false;
    while (!queue.empty() && !found) {
        const GridPos p = queue.front();
        queue.pop_front();
        if (p == world.goal()) break;
        for (int a = 0; a < kNumActions; ++a) {
            const GridPos next = apply_action(p, static_cast<Action>(a));
            if (!world.in_bounds(next) || world.is_obstacle(next)) continue;
            const int idx = world.cell_index(next);
            if (parent[idx] != -2) continue;
            parent[idx] = world.cell_index(p);
            if (next == world.goal()) {
                found = true;
                break;
            }
            queue.push_back(next);
        }
    }

    if (parent[world.cell_index(world.goal())] == -2)
        throw std::runtime_error("goal unreachable");

    PathResult result;
    int idx = world.cell_index(world.goal());
    while (idx != -1) {
        result.path.push_back({idx / world.width(), idx % world.width()});
        idx = parent[idx];
    }
    std::reverse(result.path.begin(), result.path.end());
    result.length = static_cast<int>(result.path.size()) - 1;
    return result;
}

GridWorld parse_map(const std::string& text, int max_steps, RewardSpec rewards) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) lines.push_back(line);
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw std::invalid_argument("map: empty input");

    const int height = static_cast<int>(lines.size());
    const int width = static_cast<int>(lines.front().size());
    for (const std::string& row : lines)
        if (static_cast<int>(row.size()) != width)
            throw std::invalid_argument("map: rows have unequal length");
    if (width < 2 || height < 2)
        throw std::invalid_argument("map: grid dimensions must be at least 2x2");

    std::vector<GridPos> obstacles;
    GridPos start, goal;
    int starts = 0, goals = 0;
    for (int text_row = 0; text_row < height; ++text_row) {
        const int row = height - 1 - text_row;  // first text row is the top
        for (int col = 0; col < width; ++col) {
            switch (lines[text_row][col]) {
                case '.': break;
                case '#': obstacles.push_back({row, col}); break;
                case 'S': start = {row, col}; ++starts; break;
                case 'G': goal = {row, col}; ++goals; break;
                default:
                    throw std::invalid_argument("map: unexpected character '" +
                                                std::string(1, lines[text_row][col]) + "'");
            }
        }
    }
    if (starts != 1) throw std::invalid_argument("map: expected exactly one 'S'");
    if (goals != 1) throw std::invalid_argument("map: expected exactly one 'G'");
    return GridWorld(width, height, start, goal, obstacles, max_steps, rewards);
}

std::string render_map(const GridWorld& world) {
    std::string out;
    out.reserve(static_cast<std::size_t>(world.height()) * (world.width() + 1));
    for (int row = world.height() - 1; row >= 0; --row) {
        for (int col = 0; col < world.width(); ++col) {
            const GridPos p{row, col};
            char c = '.';
            if (p == world.start()) c = 'S';
            else if (p == world.goal()) c = 'G';
            else if (world.is_obstacle(p)) c = '#';
            out.push_back(c);
        }
        out.push_back('\n');
    }
    return out;
}

std::string render_path(const GridWorld& world, const std::vector<GridPos>& path) {
    std::vector<std::uint8_t> on_path(world.cell_count(), 0);
    for (const GridPos& p : path)
        if (world.in_bounds(p)) on_path[world.cell_index(p)] = 1;

    std::string out;
    out.reserve(static_cast<std::size_t>(world.height()) * (world.width() + 1));
    for (int row = world.height() - 1; row >= 0; --row) {
        for (int col = 0; col < world.width(); ++col) {
            const GridPos p{row, col};
            char c = '.';
            if (p == world.start()) c = 'S';
            else if (p == world.goal()) c = 'G';
            else if (world.is_obstacle(p)) c = '#';
            else if (on_path[world.cell_index(p)]) c = '*';
            out.push_back(c);
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace gridnav
