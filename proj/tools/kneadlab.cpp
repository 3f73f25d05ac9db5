#include <iostream>

int main() {
  std::cout << "kneadlab: placeholder\n";
  return 0;
}
