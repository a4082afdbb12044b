int main() {
  int i;
  int s = 0;
  for (i = 0; i < 3; i++) {
    s = s + i;
  }
  for (; ; ) {
    return s;
  }
}
