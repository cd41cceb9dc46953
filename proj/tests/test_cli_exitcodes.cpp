// Exit-code discipline of the octocloud binary, driven end to end:
// 0 ok, 2 usage, 3 parse, 4 I/O, 5 integrity. Takes the binary path as
// argv[1].

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

int run(const std::string& command) {
    const int status = std::system((command + " >/dev/null 2>&1").c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

void expect_exit(const std::string& command, int expected) {
    const int got = run(command);
    if (got == expected) {
        std::printf("ok   exit %d: %s\n", expected, command.c_str());
    } else {
        std::printf("FAIL exit %d (wanted %d): %s\n", got, expected, command.c_str());
        ++failures;
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-octocloud-binary>\n", argv[0]);
        return 2;
    }
    const std::string bin = argv[1];

    std::mt19937_64 rng(std::random_device{}());
    const fs::path tmp = fs::temp_directory_path() / ("octocloud-cli-" + std::to_string(rng()));
    fs::create_directories(tmp);

    const fs::path good = tmp / "good.obj";
    std::ofstream(good) << "v 1 2 3\nv 4 5 6\n";
    const fs::path bad = tmp / "bad.obj";
    std::ofstream(bad) << "v 1 abc 3\n";
    const fs::path empty = tmp / "empty.obj";
    std::ofstream(empty) << "# no vertices here\n";

    expect_exit(bin, 2);                                       // no subcommand
    expect_exit(bin + " stats", 2);                            // missing --input
    expect_exit(bin + " stats --bogus-flag x -i " + good.string(), 2);
    expect_exit(bin + " stats -i " + good.string() + " -l 99", 2);
    expect_exit(bin + " stats -i " + tmp.string() + "/absent.obj", 4);
    expect_exit(bin + " stats -i " + bad.string(), 3);
    expect_exit(bin + " stats -i " + empty.string(), 3);
    expect_exit(bin + " stats -i " + good.string(), 0);
    expect_exit(bin + " stats -i " + good.string() + " --report structured", 0);
    expect_exit(bin + " classify -i " + good.string() + " -o /nonexistent-dir/out.ply", 4);
    expect_exit(bin + " classify -i " + good.string() + " -o " + (tmp / "out.ply").string(), 0);
    expect_exit(bin + " classify -i " + good.string() + " -o " + (tmp / "o2.ply").string() +
                    " --color-map green,red,notacolor", 2);
    expect_exit(bin + " reduce -i " + good.string() + " -o " + (tmp / "m.obj").string() +
                    " -f obj", 0);
    expect_exit(bin + " voxelize -i " + good.string() + " -o " + (tmp / "v.obj").string() +
                    " --boxes", 0);
    expect_exit(bin + " voxelize -i " + good.string() + " -o " + (tmp / "v.ply").string() +
                    " --boxes -f ply", 2);
    expect_exit(bin + " synth -o " + (tmp / "s.obj").string() + " --kind canopy --expected " +
                    (tmp / "s.json").string(), 0);
    expect_exit(bin + " synth -o " + (tmp / "s1.obj").string() + " --kind canopy -l 1", 2);
    expect_exit(bin + " --help", 0);

    std::error_code ec;
    fs::remove_all(tmp, ec);

    if (failures > 0) {
        std::printf("%d exit-code checks failed\n", failures);
        return 1;
    }
    std::printf("all exit-code checks passed\n");
    return 0;
}
