from howessp.cli import main

main()
