#include <cobord/graded_ring.hpp>

#include <iostream>

int main() {
    std::cout << "cobord cli placeholder\n";
    return 0;
}
