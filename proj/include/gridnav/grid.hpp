#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gridnav {

// Row 0 is the bottom row of the grid, so the start cell in the lower left
// corner is (0, 0) and the goal in the upper right is (height-1, width-1).
struct GridPos {
    int row = 0;
    int col = 0;
    friend bool operator==(const GridPos&, const GridPos&) = default;
};

enum class Action : int { Up = 0, Down = 1, Left = 2, Right = 3 };

inline constexpr int kNumActions = 4;

Action action_from_index(int index);
const char* action_name(Action a);

// Unchecked 4-connected move (Up increases row).
GridPos apply_action(GridPos p, Action a);

struct RewardSpec {
    double step_cost = -1.0;
    double collision_penalty = -10.0;
    double goal_bonus = 100.0;
};

struct StepOutcome {
    GridPos next;
    double reward = 0.0;
    bool collided = false;
    bool done = false;
    bool reached_goal = false;
};

// One interaction tuple as stored in the replay buffer. States are encoded
// feature vectors (one-hot over cells).
struct Transition {
    std::vector<double> state;
    Action action = Action::Up;
    double reward = 0.0;
    std::vector<double> next_state;
    bool done = false;
};

// Immutable obstacle gridworld. Construction validates every invariant,
// including goal reachability (BFS), and throws std::invalid_argument on
// violation. Instances are safe to share read-only across threads.
class GridWorld {
public:
    GridWorld(int width, int height, GridPos start, GridPos goal,
              const std::vector<GridPos>& obstacles, int max_steps,
              RewardSpec rewards = {});

    int width() const { return width_; }
    int height() const { return height_; }
    GridPos start() const { return start_; }
    GridPos goal() const { return goal_; }
    int max_steps() const { return max_steps_; }
    const RewardSpec& rewards() const { return rewards_; }

    int cell_count() const { return width_ * height_; }
    int cell_index(GridPos p) const { return p.row * width_ + p.col; }
    bool in_bounds(GridPos p) const {
        return p.row >= 0 && p.row < height_ && p.col >= 0 && p.col < width_;
    }
    bool is_obstacle(GridPos p) const { return mask_[cell_index(p)] != 0; }
    int obstacle_count() const { return obstacle_count_; }

    // Obstacles sorted by cell index; byte-identical across identical worlds.
    std::vector<GridPos> obstacles() const;

private:
    int width_;
    int height_;
    GridPos start_;
    GridPos goal_;
    int max_steps_;
    RewardSpec rewards_;
    std::vector<std::uint8_t> mask_;
    int obstacle_count_ = 0;
};

// Seeded random world: start (0,0), goal (height-1,width-1), obstacle cells
// drawn uniformly from the remaining cells and re-sampled (bounded number of
// attempts) until the goal is reachable. Pure function of its arguments.
GridWorld generate_world(int width, int height, int obstacle_count,
                         std::uint64_t seed, int max_steps = 200,
                         RewardSpec rewards = {});

// Applies one 4-connected move. Moves into walls or obstacles keep the agent
// in place and flag a collision; done is true exactly when the goal cell is
// reached. Step-cap termination is the episode loop's job, not step's.
StepOutcome step(const GridWorld& world, GridPos pos, Action action);

// One-hot over cells: 1.0 at row*width+col, 0.0 elsewhere.
std::vector<double> encode_state(const GridWorld& world, GridPos pos);
void encode_state_into(const GridWorld& world, GridPos pos, double* out);

struct PathResult {
    int length = 0;                // number of moves
    std::vector<GridPos> path;     // includes start and goal
};

// Minimum-length start->goal path; among equals, the one found by BFS with
// neighbor expansion order Up, Down, Left, Right. Always succeeds for worlds
// that passed construction.
PathResult bfs_shortest_path(const GridWorld& world);

// Text map format: '.' free, '#' obstacle, 'S' start, 'G' goal; the first
// text row is the TOP of the grid (row height-1). Trailing newline optional.
GridWorld parse_map(const std::string& text, int max_steps = 200,
                    RewardSpec rewards = {});

// Inverse of parse_map; emits a trailing newline after every row.
std::string render_map(const GridWorld& world);

// render_map with '*' overlaid on path cells (S/G glyphs take precedence).
std::string render_path(const GridWorld& world, const std::vector<GridPos>& path);

}  // namespace gridnav
